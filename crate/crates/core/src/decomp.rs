//! Splitting a vector space into indecomposable summands under a unital algebra of endomorphisms.
//!
//! The algebra is given by a spanning set of matrices acting on row vectors. Summands are found by
//! Fitting decompositions of elements whose eigenvalues lie in the field; a summand is certified
//! indecomposable when its endomorphism algebra is `K·1 + N` with `N` nilpotent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::linalg::{Mat, Subspace};

/// Deterministic generator used by every randomized procedure.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed from `HEARTFORGE_SEED`, falling back to `fallback`.
pub fn seed_from_env(fallback: u64) -> u64 {
    std::env::var("HEARTFORGE_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(fallback)
}

/// One summand: rows spanning it in the ambient space, and whether its endomorphism algebra is local.
#[derive(Clone, Debug)]
pub struct Piece<K: Field> {
    pub basis: Mat<K>,
    pub local: bool,
}

/// Minimal polynomial of `v` under `m` (the monic generator of its annihilator).
pub fn krylov_minpoly<K: Field>(m: &Mat<K>, v: &[K::E]) -> Vec<K::E> {
    let k = &m.field;
    let n = m.rows;
    let mut vecs: Vec<Vec<K::E>> = vec![v.to_vec()];
    loop {
        let d = vecs.len();
        // Solve Σ c_i vecs[i] = vecs[d-1]·m over the previous vectors.
        let next = m.apply(&vecs[d - 1]);
        let a = Mat::from_rows(k, n, vecs.clone());
        if let Ok(Some(c)) = a.solve(&Mat::from_rows(k, n, vec![next.clone()])) {
            let mut p: Vec<K::E> = c.row(0).iter().map(|x| k.neg(x)).collect();
            p.push(k.one());
            return p;
        }
        vecs.push(next);
        if vecs.len() > n + 1 {
            unreachable!("Krylov sequence longer than the dimension");
        }
    }
}

fn eval_matrix<K: Field>(m: &Mat<K>, lambda: &K::E) -> Mat<K> {
    m.sub(&Mat::scalar(&m.field, m.rows, lambda))
}

/// The eigenvalue `λ` with `m − λ` nilpotent, when there is one in the field.
pub fn residue<K: Field>(m: &Mat<K>) -> Option<K::E> {
    let k = &m.field;
    let r = m.rows;
    if r == 0 {
        return Some(k.zero());
    }
    let rr = k.from_i64(r as i64);
    let candidates: Vec<K::E> = if !k.is_zero(&rr) {
        vec![k.div(&m.trace(), &rr)]
    } else {
        let mut v = vec![k.zero(); r];
        v[0] = k.one();
        k.roots(&krylov_minpoly(m, &v))
    };
    candidates.into_iter().find(|l| eval_matrix(m, l).is_nilpotent())
}

/// Whether the algebra spanned by `ms` (together with 1) is local with residue field `K`.
pub fn is_local<K: Field>(ms: &[Mat<K>], r: usize) -> bool {
    if r <= 1 {
        return true;
    }
    let mut nil = Vec::new();
    for m in ms {
        match residue(m) {
            Some(l) => nil.push(eval_matrix(m, &l)),
            None => return false,
        }
    }
    nilpotent_family(&nil, r)
}

/// Whether the associative algebra generated by `ms` is nilpotent, via the flag `V·N^i`.
pub fn nilpotent_family<K: Field>(ms: &[Mat<K>], r: usize) -> bool {
    let Some(first) = ms.first() else { return true };
    let k = first.field.clone();
    let mut v = Subspace::full(&k, r);
    loop {
        if v.is_zero() {
            return true;
        }
        let mut rows = Vec::new();
        for m in ms {
            rows.extend(v.basis.mul(m).row_list());
        }
        let next = Subspace::from_rows(&k, r, rows);
        if next.dim() >= v.dim() {
            return false;
        }
        v = next;
    }
}

fn random_element<K: Field, R: Rng + ?Sized>(ms: &[Mat<K>], r: usize, k: &K, rng: &mut R) -> Mat<K> {
    let mut acc = Mat::zeros(k, r, r);
    for m in ms {
        acc.axpy(&k.random(rng), m);
    }
    acc
}

/// `(ker F, im F)` for `F = (m − λ)^r` when this splits the space nontrivially.
fn fitting<K: Field>(m: &Mat<K>, lambda: &K::E) -> Option<(Mat<K>, Mat<K>)> {
    let r = m.rows;
    let f = eval_matrix(m, lambda).pow(r);
    let ker = f.kernel();
    if ker.dim() == 0 || ker.dim() == r {
        return None;
    }
    let im = f.row_space();
    Some((ker.basis, im.basis))
}

fn try_split<K: Field, R: Rng + ?Sized>(ms: &[Mat<K>], r: usize, k: &K, rng: &mut R) -> Option<(Mat<K>, Mat<K>)> {
    // Eigenvalue splitting on basis elements and random combinations.
    let tries = ms.len() + 12;
    for t in 0..tries {
        let m = if t < ms.len() { ms[t].clone() } else { random_element(ms, r, k, rng) };
        let v: Vec<K::E> = (0..r).map(|_| k.random(rng)).collect();
        if v.iter().all(|x| k.is_zero(x)) {
            continue;
        }
        for l in k.roots(&krylov_minpoly(&m, &v)) {
            if let Some(s) = fitting(&m, &l) {
                return Some(s);
            }
        }
    }
    // Elements killing a fixed vector: a non-nilpotent one splits at eigenvalue 0.
    for c in 0..r {
        let mut v = vec![k.zero(); r];
        v[c] = k.one();
        let eqs = Mat::from_rows(k, r, ms.iter().map(|m| m.apply(&v)).collect());
        let sols = eqs.kernel().vectors();
        if sols.is_empty() {
            continue;
        }
        let sol_mats: Vec<Mat<K>> = sols
            .iter()
            .map(|s| {
                let mut acc = Mat::zeros(k, r, r);
                for (coef, m) in s.iter().zip(ms) {
                    acc.axpy(coef, m);
                }
                acc
            })
            .collect();
        for _ in 0..4 {
            let phi = random_element(&sol_mats, r, k, rng);
            if !phi.is_nilpotent() {
                if let Some(s) = fitting(&phi, &k.zero()) {
                    return Some(s);
                }
            }
        }
    }
    None
}

/// Basis of the span of a family of matrices.
pub fn span_basis<K: Field>(k: &K, ms: &[Mat<K>], rows: usize, cols: usize) -> Vec<Mat<K>> {
    let flat = Mat::from_rows(k, rows * cols, ms.iter().map(|m| m.data.clone()).collect());
    Subspace::from_mat(flat).vectors().into_iter().map(|d| Mat { field: k.clone(), rows, cols, data: d }).collect()
}

/// Restrict an algebra from `K^r` to the summand spanned by rows `u` with complement rows `w`.
fn restrict<K: Field>(k: &K, ms: &[Mat<K>], u: &Mat<K>, w: &Mat<K>) -> Vec<Mat<K>> {
    let t = u.vstack(w);
    let tinv = t.inverse().expect("summand and complement span the space");
    let ru = u.rows;
    let proj = tinv.block(0, 0, tinv.rows, ru);
    let restricted: Vec<Mat<K>> = ms.iter().map(|m| u.mul(m).mul(&proj)).collect();
    span_basis(k, &restricted, ru, ru)
}

/// Decompose `K^n` into summands invariant under the algebra spanned by `endo` (which must contain 1).
pub fn decompose_space<K: Field, R: Rng + ?Sized>(k: &K, n: usize, endo: &[Mat<K>], rng: &mut R) -> Vec<Piece<K>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut work = vec![(Mat::identity(k, n), span_basis(k, endo, n, n))];
    while let Some((basis, ms)) = work.pop() {
        let r = basis.rows;
        if is_local(&ms, r) {
            out.push(Piece { basis, local: true });
            continue;
        }
        match try_split(&ms, r, k, rng) {
            Some((u, w)) => {
                let mu = restrict(k, &ms, &u, &w);
                let mw = restrict(k, &ms, &w, &u);
                // Pushed in reverse so that the kernel side is processed first.
                work.push((w.mul(&basis), mw));
                work.push((u.mul(&basis), mu));
            }
            None => out.push(Piece { basis, local: false }),
        }
    }
    out
}

/// Structure constants of a matrix algebra: `basis[a]·basis[b] = Σ c[a][b][r] basis[r]`.
pub fn matrix_structure_constants<K: Field>(k: &K, basis: &[Mat<K>]) -> Option<Vec<Vec<Vec<K::E>>>> {
    let Some(first) = basis.first() else { return Some(Vec::new()) };
    let (rows, cols) = (first.rows, first.cols);
    let flat = Mat::from_rows(k, rows * cols, basis.iter().map(|m| m.data.clone()).collect());
    let mut out = Vec::new();
    for a in basis {
        let mut row = Vec::new();
        for b in basis {
            let p = a.mul(b);
            let c = flat.solve(&Mat::from_rows(k, rows * cols, vec![p.data])).ok()??;
            row.push(c.row_vec(0));
        }
        out.push(row);
    }
    Some(out)
}
