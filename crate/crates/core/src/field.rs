//! Scalar fields: prime fields GF(p) and the rationals.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl FieldSpec {
    /// Characteristic; 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rational => 0,
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

/// A field context. Elements are plain values; all arithmetic goes through the context.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type E: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_i64(&self, n: i64) -> Self::E;
    /// The image of `num/den`; fails when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::E>;
    /// A random element; over Q a small integer.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::E;
    fn render(&self, a: &Self::E) -> String;
    /// Distinct roots in the field of a polynomial (coefficients low to high).
    fn roots(&self, poly: &[Self::E]) -> Vec<Self::E>;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }
    fn is_one(&self, a: &Self::E) -> bool {
        *a == self.one()
    }
    fn div(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.mul(a, &self.inv(b))
    }
    /// `a + b*c`
    fn mul_add(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E {
        self.add(a, &self.mul(b, c))
    }
    /// Parse `"n"` or `"n/d"`.
    fn parse(&self, s: &str) -> Result<Self::E> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
        let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
        self.from_ratio(&n, &d)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field GF(p), p < 2^32.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1 << 32) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^32")));
        }
        Ok(Fp { p })
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        r
    }
}

impl Field for Fp {
    type E = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    #[inline]
    fn mul_add(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        (a + b * c) % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_u64().unwrap();
        let d = den.mod_floor(&p).to_u64().unwrap();
        if d == 0 {
            return Err(Error::Parse(format!("denominator {den} vanishes in GF({})", self.p)));
        }
        Ok(self.mul(&n, &self.inv(&d)))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn roots(&self, poly: &[u64]) -> Vec<u64> {
        poly::roots_fp(self, poly)
    }
}

/// The rational numbers with exact big-integer fractions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_zero() || b.is_zero() {
            return BigRational::zero();
        }
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-5..=5))
    }
    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn roots(&self, poly: &[BigRational]) -> Vec<BigRational> {
        poly::roots_q(poly)
    }
}
