//! Small algebras shared by the golden examples and the tests.

use std::sync::Arc;

use crate::algebra::{build_algebra, presentation, Algebra};
use crate::error::Result;
use crate::field::Field;

/// Path algebra of the linear quiver `1 → 2 → ⋯ → n` without relations.
pub fn linear<K: Field>(k: &K, n: usize) -> Result<Arc<Algebra<K>>> {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let arrows: Vec<(String, String, String)> =
        (1..n).map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string())).collect();
    let ar: Vec<(&str, &str, &str)> = arrows.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    build_algebra(k, &presentation(k.spec(), &vs, &ar, &[]), None)
}

/// Kronecker algebra `1 ⇉ 2` with arrows `a`, `b`.
pub fn kronecker<K: Field>(k: &K) -> Result<Arc<Algebra<K>>> {
    build_algebra(k, &presentation(k.spec(), &["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[]), None)
}

/// `1 ⇉ 2 ⇉ 3` with arrows `alpha, beta: 1 → 2`, `gamma, delta: 2 → 3` and relations
/// `alpha·delta`, `beta·gamma`, `alpha·gamma − beta·delta`; dimension 8.
pub fn stacked_kronecker<K: Field>(k: &K) -> Result<Arc<Algebra<K>>> {
    let p = presentation(
        k.spec(),
        &["1", "2", "3"],
        &[("alpha", "1", "2"), ("beta", "1", "2"), ("gamma", "2", "3"), ("delta", "2", "3")],
        &[
            &[("1", &["alpha", "delta"])],
            &[("1", &["beta", "gamma"])],
            &[("1", &["alpha", "gamma"]), ("-1", &["beta", "delta"])],
        ],
    );
    build_algebra(k, &p, None)
}
