//! Dense univariate polynomials (coefficients low to high) and root finding in the base field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, Fp, Rationals};

pub fn trim<K: Field>(k: &K, mut p: Vec<K::E>) -> Vec<K::E> {
    while p.last().is_some_and(|c| k.is_zero(c)) {
        p.pop();
    }
    p
}

/// Degree; `None` for the zero polynomial.
pub fn degree<K: Field>(k: &K, p: &[K::E]) -> Option<usize> {
    p.iter().rposition(|c| !k.is_zero(c))
}

pub fn eval<K: Field>(k: &K, p: &[K::E], x: &K::E) -> K::E {
    let mut acc = k.zero();
    for c in p.iter().rev() {
        acc = k.mul_add(c, &acc, x);
    }
    acc
}

pub fn mul<K: Field>(k: &K, a: &[K::E], b: &[K::E]) -> Vec<K::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.mul_add(&out[i + j], x, y);
        }
    }
    trim(k, out)
}

pub fn sub<K: Field>(k: &K, a: &[K::E], b: &[K::E]) -> Vec<K::E> {
    let n = a.len().max(b.len());
    let z = k.zero();
    let out = (0..n).map(|i| k.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(k, out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem<K: Field>(k: &K, a: &[K::E], b: &[K::E]) -> (Vec<K::E>, Vec<K::E>) {
    let db = degree(k, b).expect("division by zero polynomial");
    let lead_inv = k.inv(&b[db]);
    let mut r = trim(k, a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![k.zero(); r.len() - db];
    while let Some(dr) = degree(k, &r) {
        if dr < db {
            break;
        }
        let c = k.mul(&r[dr], &lead_inv);
        let s = dr - db;
        for (j, bj) in b[..=db].iter().enumerate() {
            r[s + j] = k.sub(&r[s + j], &k.mul(&c, bj));
        }
        q[s] = c;
        r = trim(k, r);
    }
    (trim(k, q), r)
}

pub fn monic<K: Field>(k: &K, p: Vec<K::E>) -> Vec<K::E> {
    let p = trim(k, p);
    match p.last() {
        None => p,
        Some(l) => {
            let li = k.inv(l);
            p.iter().map(|c| k.mul(c, &li)).collect()
        }
    }
}

pub fn gcd<K: Field>(k: &K, a: &[K::E], b: &[K::E]) -> Vec<K::E> {
    let mut a = trim(k, a.to_vec());
    let mut b = trim(k, b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(k, &a, &b);
        a = b;
        b = r;
    }
    monic(k, a)
}

pub fn derivative<K: Field>(k: &K, p: &[K::E]) -> Vec<K::E> {
    let out = p.iter().enumerate().skip(1).map(|(i, c)| k.mul(c, &k.from_i64(i as i64))).collect();
    trim(k, out)
}

fn powmod<K: Field>(k: &K, base: &[K::E], mut e: u64, m: &[K::E]) -> Vec<K::E> {
    let mut result = vec![k.one()];
    let mut b = divrem(k, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            result = divrem(k, &mul(k, &result, &b), m).1;
        }
        b = divrem(k, &mul(k, &b, &b), m).1;
        e >>= 1;
    }
    result
}

/// Distinct roots in GF(p).
pub fn roots_fp(f: &Fp, poly: &[u64]) -> Vec<u64> {
    let poly = trim(f, poly.to_vec());
    let Some(d) = degree(f, &poly) else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let p = f.p();
    if p <= 4096 {
        return (0..p).filter(|x| eval(f, &poly, x) == 0).collect();
    }
    // g = gcd(poly, x^p - x) is the product of the distinct linear factors.
    let xp = powmod(f, &[0, 1], p, &poly);
    let g = gcd(f, &poly, &sub(f, &xp, &[0, 1]));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    split_linear(f, g, &mut rng, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(f: &Fp, g: Vec<u64>, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    let Some(d) = degree(f, &g) else { return };
    match d {
        0 => {}
        1 => out.push(f.neg(&f.div(&g[0], &g[1]))),
        _ => loop {
            let a = f.random(rng);
            let h = powmod(f, &[a, 1], (f.p() - 1) / 2, &g);
            let h = gcd(f, &g, &sub(f, &h, &[1]));
            let dh = degree(f, &h).unwrap_or(0);
            if dh > 0 && dh < d {
                let (q, _) = divrem(f, &g, &h);
                split_linear(f, h, rng, out);
                split_linear(f, q, rng, out);
                return;
            }
        },
    }
}

/// Distinct rational roots, by p-adic Newton lifting and rational reconstruction.
pub fn roots_q(poly: &[BigRational]) -> Vec<BigRational> {
    let q = Rationals;
    let poly = trim(&q, poly.to_vec());
    let Some(d) = degree(&q, &poly) else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // Strip the factor x^k.
    let shift = poly.iter().position(|c| !c.is_zero()).unwrap();
    if shift > 0 {
        out.push(BigRational::zero());
    }
    let stripped: Vec<BigRational> = poly[shift..].to_vec();
    // Squarefree part.
    let g = gcd(&q, &stripped, &derivative(&q, &stripped));
    let sqf = divrem(&q, &stripped, &g).0;
    let ints = primitive_integer(&sqf);
    if ints.len() < 2 {
        return out;
    }
    let lead = ints.last().unwrap().abs();
    let cst = ints[0].abs();
    let bound = lead.clone().max(cst.clone());
    let target = BigInt::from(2) * &bound * &bound + 1;

    let mut ell = 10007u64;
    let fp = loop {
        if let Ok(fp) = Fp::new(ell) {
            let l = BigInt::from(ell);
            let reduced: Vec<u64> = ints.iter().map(|c| c.mod_floor(&l).to_u64().unwrap()).collect();
            let reduced = trim(&fp, reduced);
            if !(&lead % &l).is_zero() && !(&cst % &l).is_zero() {
                let dg = gcd(&fp, &reduced, &derivative(&fp, &reduced));
                if degree(&fp, &dg) == Some(0) {
                    break fp;
                }
            }
        }
        ell += 2;
    };
    let l = BigInt::from(fp.p());
    let reduced: Vec<u64> = ints.iter().map(|c| c.mod_floor(&l).to_u64().unwrap()).collect();
    let dints = derivative_int(&ints);
    for r0 in (0..fp.p()).filter(|x| eval(&fp, &reduced, x) == 0) {
        let mut m = l.clone();
        let mut r = BigInt::from(r0);
        while m < target {
            m = &m * &m;
            let fv = eval_int_mod(&ints, &r, &m);
            let dv = eval_int_mod(&dints, &r, &m);
            let inv = mod_inverse(&dv, &m).expect("simple root lifts");
            r = (r - fv * inv).mod_floor(&m);
        }
        if let Some(c) = reconstruct(&r, &m) {
            if eval(&q, &poly, &c).is_zero() && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out.sort();
    out
}

fn primitive_integer(p: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in p {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn derivative_int(p: &[BigInt]) -> Vec<BigInt> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

fn eval_int_mod(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

fn reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let n = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > n {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &qt * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > n {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn fp_roots_small_and_large() {
        let f = Fp::new(7).unwrap();
        // (x-1)(x-3) = x^2 - 4x + 3
        assert_eq!(roots_fp(&f, &[3, 3, 1]), vec![1, 3]);
        let f = Fp::new(1_000_003).unwrap();
        let p = mul(&f, &mul(&f, &[f.neg(&5), 1], &[f.neg(&17), 1]), &[1, 0, 1]);
        let mut r = roots_fp(&f, &p);
        r.sort();
        assert!(r.contains(&5) && r.contains(&17));
    }

    #[test]
    fn rational_roots() {
        // (2x - 3)(x + 4)^2 x (x^2 + 1)
        let k = Rationals;
        let p = mul(&k, &[q(-3), q(2)], &[q(4), q(1)]);
        let p = mul(&k, &p, &[q(4), q(1)]);
        let p = mul(&k, &p, &[q(0), q(1)]);
        let p = mul(&k, &p, &[q(1), q(0), q(1)]);
        let r = roots_q(&p);
        assert_eq!(r, vec![q(-4), q(0), BigRational::new(BigInt::from(3), BigInt::from(2))]);
    }

    #[test]
    fn gcd_and_divrem() {
        let f = Fp::new(101).unwrap();
        let a = mul(&f, &[1, 1], &[2, 1]);
        let b = mul(&f, &[1, 1], &[3, 1]);
        assert_eq!(gcd(&f, &a, &b), vec![1, 1]);
        let (qq, r) = divrem(&f, &a, &[1, 1]);
        assert_eq!(qq, vec![2, 1]);
        assert!(r.is_empty());
    }
}
