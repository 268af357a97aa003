//! Basic algebras of small additive categories, and endomorphism rings of complexes.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, GabrielQuiver, Provenance, Sparse};
use crate::decomp::residue;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Mat, Subspace};

use super::complex::{decompose_complex, hom_in_heart, ChainMap, HomK, StandardComplex};

/// One basis element of a basic algebra: a morphism `a → b` in coordinates of `Hom(a, b)`.
#[derive(Clone, Debug)]
pub struct BasisMorphism<K: Field> {
    pub from: usize,
    pub to: usize,
    pub coords: Vec<K::E>,
}

/// The algebra `⊕ Hom(a, b)` on pairwise non-isomorphic objects with local endomorphism rings,
/// with product `x·y = x then y`; a morphism `a → b` lies in the Peirce block `e_a S e_b`.
///
/// `compose(a, b, c, x, y)` returns the coordinates of `x then y` in `Hom(a, c)`.
pub fn basic_algebra<K: Field>(
    k: &K,
    vertex_labels: Vec<String>,
    hom_dims: &[Vec<usize>],
    identity: &[Vec<K::E>],
    compose: &dyn Fn(usize, usize, usize, &[K::E], &[K::E]) -> Vec<K::E>,
) -> Result<(Algebra<K>, Vec<BasisMorphism<K>>)> {
    let n = vertex_labels.len();
    let unit = |d: usize, i: usize| {
        let mut v = vec![k.zero(); d];
        v[i] = k.one();
        v
    };
    // Block bases: the identity and a radical basis on the diagonal, all of Hom elsewhere.
    let mut blocks: Vec<Vec<Mat<K>>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            let d = hom_dims[a][b];
            let rows: Vec<Vec<K::E>> = if a == b {
                let mut rad = Vec::new();
                for i in 0..d {
                    let ui = unit(d, i);
                    let left = Mat::from_rows(k, d, (0..d).map(|j| compose(a, a, a, &ui, &unit(d, j))).collect());
                    let lambda = residue(&left).ok_or_else(|| {
                        Error::Unsupported("an indecomposable summand has a non-split endomorphism ring".into())
                    })?;
                    rad.push(ui.iter().zip(&identity[a]).map(|(u, e)| k.sub(u, &k.mul(&lambda, e))).collect());
                }
                let rad = Subspace::from_rows(k, d, rad).vectors();
                if rad.len() + 1 != d {
                    return Err(Error::Unsupported("endomorphism ring of a summand is not local".into()));
                }
                std::iter::once(identity[a].clone()).chain(rad).collect()
            } else {
                (0..d).map(|i| unit(d, i)).collect()
            };
            blocks[a].push(Mat::from_rows(k, d, rows));
        }
    }
    let mut basis: Vec<BasisMorphism<K>> =
        (0..n).map(|a| BasisMorphism { from: a, to: a, coords: identity[a].clone() }).collect();
    let mut index = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        index[a][a].push(a);
    }
    for a in 0..n {
        for b in 0..n {
            let start = usize::from(a == b);
            for r in start..blocks[a][b].rows {
                index[a][b].push(basis.len());
                basis.push(BasisMorphism { from: a, to: b, coords: blocks[a][b].row_vec(r) });
            }
        }
    }
    let dim = basis.len();
    let mut table: Vec<Vec<Sparse<K>>> = vec![vec![Vec::new(); dim]; dim];
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            if x.to != y.from {
                continue;
            }
            let (a, b, c) = (x.from, x.to, y.to);
            let prod = compose(a, b, c, &x.coords, &y.coords);
            if prod.iter().all(|e| k.is_zero(e)) {
                continue;
            }
            let sol = blocks[a][c]
                .solve(&Mat::from_rows(k, hom_dims[a][c], vec![prod]))?
                .ok_or_else(|| Error::Shape("block basis does not span".into()))?;
            table[i][j] = sol
                .row(0)
                .iter()
                .enumerate()
                .filter(|(_, e)| !k.is_zero(e))
                .map(|(t, e)| (index[a][c][t], e.clone()))
                .collect();
        }
    }
    let labels = basis
        .iter()
        .enumerate()
        .map(|(i, m)| {
            if i < n {
                format!("e{}", vertex_labels[i])
            } else {
                format!("m{}_{}_{}", vertex_labels[m.from], vertex_labels[m.to], i)
            }
        })
        .collect();
    let src = basis.iter().map(|m| m.from).collect();
    let tgt = basis.iter().map(|m| m.to).collect();
    let alg = Algebra::from_structure(k.clone(), vertex_labels, labels, src, tgt, table, Provenance::Raw)?;
    Ok((alg, basis))
}

/// `End(G)^op` reduced to its basic algebra, with the objects and morphisms behind each basis element.
#[derive(Clone, Debug)]
pub struct EndRing<K: Field> {
    pub algebra: Arc<Algebra<K>>,
    /// Pairwise non-isomorphic indecomposable summands, one per vertex.
    pub objects: Vec<StandardComplex<K>>,
    /// How often each summand occurs in `G`.
    pub multiplicities: Vec<usize>,
    /// Chain map represented by each basis element.
    pub basis: Vec<ChainMap<K>>,
}

/// Reported invariants of an endomorphism ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndRingSummary {
    pub dim: usize,
    pub simples: usize,
    pub radical_dim: usize,
    pub quiver: GabrielQuiver,
    pub center_dim: usize,
    pub cartan: Vec<Vec<usize>>,
}

impl EndRingSummary {
    pub fn of<K: Field>(a: &Algebra<K>) -> Result<Self> {
        let inv = a.invariants()?;
        Ok(EndRingSummary {
            dim: inv.dim,
            simples: inv.simples,
            radical_dim: inv.radical_dim,
            quiver: inv.quiver,
            center_dim: inv.center_dim,
            cartan: inv.cartan,
        })
    }
}

/// Whether a chain map `a → a` is invertible modulo homotopy, given that `End_K(a)` is local.
fn is_unit<K: Field>(f: &ChainMap<K>, end: &HomK<K>) -> bool {
    let mut x = f.clone();
    let mut power = 1;
    while power < end.dim().max(1) {
        x = x.then(&x);
        power *= 2;
    }
    !end.is_null_homotopic(&x)
}

fn k_isomorphic<K: Field>(a: &StandardComplex<K>, b: &StandardComplex<K>, end_a: &HomK<K>) -> bool {
    let ab = hom_in_heart(a, b);
    let ba = hom_in_heart(b, a);
    ab.reps.iter().any(|f| ba.reps.iter().any(|g| is_unit(&f.then(g), end_a)))
}

/// Basic algebra of `End_D(G)^op` from the indecomposable summands of `G`.
pub fn end_ring<K: Field>(g: &StandardComplex<K>, seed: u64) -> Result<EndRing<K>> {
    let k = g.q.field().clone();
    let mut rng = crate::decomp::seeded_rng(seed);
    let mut objects: Vec<StandardComplex<K>> = Vec::new();
    let mut ends: Vec<HomK<K>> = Vec::new();
    let mut keys: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut multiplicities = Vec::new();
    for (piece, local) in decompose_complex(g, &mut rng)? {
        let end = hom_in_heart(&piece, &piece);
        if end.dim() == 0 {
            continue;
        }
        if !local {
            return Err(Error::Unsupported("could not split a summand of the complex".into()));
        }
        let key = (piece.h_minus1().dims, piece.h0().dims);
        let found = (0..objects.len()).find(|&i| keys[i] == key && k_isomorphic(&objects[i], &piece, &ends[i]));
        match found {
            Some(i) => multiplicities[i] += 1,
            None => {
                objects.push(piece);
                ends.push(end);
                keys.push(key);
                multiplicities.push(1);
            }
        }
    }
    let n = objects.len();
    let homs: Vec<Vec<HomK<K>>> = (0..n)
        .map(|a| {
            (0..n).map(|b| if a == b { ends[a].clone() } else { hom_in_heart(&objects[a], &objects[b]) }).collect()
        })
        .collect();
    let hom_dims: Vec<Vec<usize>> = homs.iter().map(|r| r.iter().map(|h| h.dim()).collect()).collect();
    let identity: Vec<Vec<K::E>> = (0..n).map(|a| homs[a][a].coords(&ChainMap::identity(&objects[a]))).collect();
    let compose = |a: usize, b: usize, c: usize, x: &[K::E], y: &[K::E]| {
        homs[a][c].coords(&homs[a][b].element(x).then(&homs[b][c].element(y)))
    };
    let labels = (1..=n).map(|i| i.to_string()).collect();
    let (alg, basis) = basic_algebra(&k, labels, &hom_dims, &identity, &compose)?;
    let basis = basis.iter().map(|m| homs[m.from][m.to].element(&m.coords)).collect();
    Ok(EndRing { algebra: Arc::new(alg), objects, multiplicities, basis })
}

/// `A × B` on the disjoint union of vertices.
pub fn product_algebra<K: Field>(a: &Algebra<K>, b: &Algebra<K>) -> Result<Algebra<K>> {
    let (na, nb) = (a.n_vertices(), b.n_vertices());
    let (da, db) = (a.dim(), b.dim());
    // New order: idempotents of A, idempotents of B, then the rest of A, then the rest of B.
    let mut order: Vec<(bool, usize)> = (0..na).map(|i| (false, i)).collect();
    order.extend((0..nb).map(|i| (true, i)));
    order.extend((na..da).map(|i| (false, i)));
    order.extend((nb..db).map(|i| (true, i)));
    let pos = |side: bool, i: usize| order.iter().position(|&o| o == (side, i)).expect("listed");
    let vertex = |side: bool, v: usize| if side { na + v } else { v };
    let mut table = vec![vec![Vec::new(); da + db]; da + db];
    for (r, &(s1, i)) in order.iter().enumerate() {
        for (c, &(s2, j)) in order.iter().enumerate() {
            if s1 != s2 {
                continue;
            }
            let alg = if s1 { b } else { a };
            table[r][c] = alg.mul_basis(i, j).iter().map(|(t, e)| (pos(s1, *t), e.clone())).collect();
        }
    }
    let mut vertex_labels: Vec<String> = a.vertex_labels.iter().map(|l| format!("A{l}")).collect();
    vertex_labels.extend(b.vertex_labels.iter().map(|l| format!("B{l}")));
    let labels =
        order.iter().map(|&(s, i)| if s { format!("B{}", b.labels[i]) } else { format!("A{}", a.labels[i]) }).collect();
    let src = order.iter().map(|&(s, i)| vertex(s, if s { b.src[i] } else { a.src[i] })).collect();
    let tgt = order.iter().map(|&(s, i)| vertex(s, if s { b.tgt[i] } else { a.tgt[i] })).collect();
    Algebra::from_structure(a.field.clone(), vertex_labels, labels, src, tgt, table, Provenance::Raw)
}
