//! Projective presentations, syzygies, Ext groups, projective dimension and tensor products.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Mat, Subspace};
use crate::modrep::{hom_space, FdModule, ModuleMap, Submodule};

/// `P1 --d--> P0 --cover--> M → 0` built from projective covers.
#[derive(Clone, Debug)]
pub struct ProjPresentation<K: Field> {
    pub p1: FdModule<K>,
    pub p0: FdModule<K>,
    pub d: ModuleMap<K>,
    pub cover: ModuleMap<K>,
    /// `Ω M = ker(cover)` and its inclusion into `P0`.
    pub syzygy: FdModule<K>,
    pub syzygy_incl: ModuleMap<K>,
}

pub fn min_presentation<K: Field>(m: &FdModule<K>) -> Result<ProjPresentation<K>> {
    let (p0, cover) = m.projective_cover()?;
    let (syzygy, syzygy_incl) = cover.kernel();
    let (p1, c1) = syzygy.projective_cover()?;
    let d = c1.then(&syzygy_incl);
    Ok(ProjPresentation { p1, p0, d, cover, syzygy, syzygy_incl })
}

/// `Ω^k M`, with `Ω^0 M = M`.
pub fn syzygy<K: Field>(m: &FdModule<K>, k: usize) -> Result<FdModule<K>> {
    let mut cur = m.clone();
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        cur = cur.projective_cover()?.1.kernel().0;
    }
    Ok(cur)
}

/// `Ext^k(M, N) = Hom(Ω^k M, N) / {restrictions of maps P_{k-1} → N}`.
#[derive(Clone, Debug)]
pub struct ExtSpace<K: Field> {
    pub degree: usize,
    pub dim: usize,
    /// `Ω^{k-1} M` with its projective cover `P_{k-1}`; `Ω^k M` embeds in `P_{k-1}`.
    pub prev: FdModule<K>,
    pub cover: ModuleMap<K>,
    pub syz: FdModule<K>,
    pub syz_incl: ModuleMap<K>,
    pub target: FdModule<K>,
    /// Cocycles representing a basis of the Ext space.
    pub cocycles: Vec<ModuleMap<K>>,
    /// Coboundaries, in flattened map coordinates.
    coboundaries: Subspace<K>,
    /// Representatives stacked above the coboundary basis, for coordinate solves.
    solver: Mat<K>,
}

impl<K: Field> ExtSpace<K> {
    /// Coordinates of the class of a cocycle `Ω^k M → N`.
    pub fn class_coords(&self, f: &ModuleMap<K>) -> Vec<K::E> {
        let k = self.target.field();
        let v = f.flatten();
        if self.dim == 0 {
            return Vec::new();
        }
        let x = self
            .solver
            .solve(&Mat::from_rows(k, v.len(), vec![v]))
            .expect("shapes agree")
            .expect("cocycle lies in the Hom space");
        x.row(0)[..self.dim].to_vec()
    }

    pub fn is_coboundary(&self, f: &ModuleMap<K>) -> bool {
        f.flatten().is_empty() || self.coboundaries.contains(&f.flatten())
    }

    /// Cocycle for a coordinate vector.
    pub fn cocycle(&self, coords: &[K::E]) -> ModuleMap<K> {
        ModuleMap::combination(&self.syz, &self.target, &self.cocycles, coords)
    }
}

fn ext_from<K: Field>(degree: usize, prev: FdModule<K>, n: &FdModule<K>) -> Result<ExtSpace<K>> {
    let k = n.field().clone();
    let (_, cover) = prev.projective_cover()?;
    let (syz, syz_incl) = cover.kernel();
    let homs = hom_space(&syz, n);
    let width: usize = syz.dims.iter().zip(&n.dims).map(|(a, b)| a * b).sum();
    let cob_rows: Vec<Vec<K::E>> = hom_space(&cover.source, n).iter().map(|f| syz_incl.then(f).flatten()).collect();
    let coboundaries = Subspace::from_rows(&k, width, cob_rows);
    let mut span = coboundaries.clone();
    let mut cocycles = Vec::new();
    for h in homs {
        let v = h.flatten();
        if !span.contains(&v) {
            span = span.sum(&Subspace::from_rows(&k, width, vec![v])).expect("same width");
            cocycles.push(h);
        }
    }
    let mut solver = Mat::from_rows(&k, width, cocycles.iter().map(|c| c.flatten()).collect());
    solver = solver.vstack(&coboundaries.basis);
    Ok(ExtSpace {
        degree,
        dim: cocycles.len(),
        prev,
        cover,
        syz,
        syz_incl,
        target: n.clone(),
        cocycles,
        coboundaries,
        solver,
    })
}

pub fn ext<K: Field>(degree: usize, m: &FdModule<K>, n: &FdModule<K>) -> Result<ExtSpace<K>> {
    if !(1..=3).contains(&degree) {
        return Err(Error::Unsupported(format!("Ext in degree {degree}")));
    }
    let prev = syzygy(m, degree - 1)?;
    ext_from(degree, prev, n)
}

pub fn ext_dim<K: Field>(degree: usize, m: &FdModule<K>, n: &FdModule<K>) -> Result<usize> {
    Ok(ext(degree, m, n)?.dim)
}

/// Projective dimension, exact up to `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PdBound {
    Exact(usize),
    GreaterThan(usize),
}

impl std::fmt::Display for PdBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PdBound::Exact(n) => write!(f, "{n}"),
            PdBound::GreaterThan(b) => write!(f, ">{b}"),
        }
    }
}

pub fn pd_up_to<K: Field>(m: &FdModule<K>, bound: usize) -> Result<PdBound> {
    let mut cur = m.clone();
    for k in 0..=bound {
        let (p, cover) = cur.projective_cover()?;
        if p.dim() == cur.dim() {
            return Ok(PdBound::Exact(k));
        }
        cur = cover.kernel().0;
    }
    Ok(PdBound::GreaterThan(bound))
}

/// `M ⊗_A N` for a right module `M` (a left module over the opposite algebra) and a left module `N`.
#[derive(Clone, Debug)]
pub struct TensorProduct<K: Field> {
    pub dim: usize,
    /// Relations inside `⊕_i M_i ⊗ N_i`; basis vectors `(i, a, c)` index `e_a ⊗ e_c` at vertex `i`.
    pub relations: Subspace<K>,
    /// Basis of the tensor product as `(vertex, index in M_i, index in N_i)`.
    pub basis: Vec<(usize, usize, usize)>,
}

pub fn tensor<K: Field>(mr: &FdModule<K>, nl: &FdModule<K>) -> Result<TensorProduct<K>> {
    let a = &nl.algebra;
    if mr.dims.len() != nl.dims.len() || mr.action.len() != nl.action.len() {
        return Err(Error::Shape("tensor factors over different algebras".into()));
    }
    let k = nl.field();
    let nv = nl.dims.len();
    let mut off = vec![0usize; nv + 1];
    for i in 0..nv {
        off[i + 1] = off[i] + mr.dims[i] * nl.dims[i];
    }
    let total = off[nv];
    let idx = |i: usize, x: usize, y: usize| off[i] + x * nl.dims[i] + y;
    let mut rows = Vec::new();
    for (g, &b) in a.gens.iter().enumerate() {
        let (s, t) = (a.src[b], a.tgt[b]);
        // Right action m·g : M_s → M_t, left action g·n : N_t → N_s.
        let (am, an) = (&mr.action[g], &nl.action[g]);
        for x in 0..mr.dims[s] {
            for c in 0..nl.dims[t] {
                let mut row = vec![k.zero(); total];
                for z in 0..mr.dims[t] {
                    let v = am.get(x, z);
                    if !k.is_zero(v) {
                        let p = idx(t, z, c);
                        row[p] = k.add(&row[p], v);
                    }
                }
                for y in 0..nl.dims[s] {
                    let v = an.get(c, y);
                    if !k.is_zero(v) {
                        let p = idx(s, x, y);
                        row[p] = k.sub(&row[p], v);
                    }
                }
                rows.push(row);
            }
        }
    }
    let relations = Subspace::from_rows(k, total, rows);
    let mut labels = Vec::with_capacity(total);
    for i in 0..nv {
        for x in 0..mr.dims[i] {
            for y in 0..nl.dims[i] {
                labels.push((i, x, y));
            }
        }
    }
    let basis = relations.free_coords().into_iter().map(|c| labels[c]).collect();
    Ok(TensorProduct { dim: total - relations.dim(), relations, basis })
}

/// Pushout of `f: A → B` and `g: A → C`: `(B ⊕ C) / {(f(x), −g(x))}` with the two structure maps.
pub fn pushout<K: Field>(f: &ModuleMap<K>, g: &ModuleMap<K>) -> Result<(FdModule<K>, ModuleMap<K>, ModuleMap<K>)> {
    let (b, c) = (&f.target, &g.target);
    let sum = FdModule::direct_sum(&[b, c])?;
    let (incl, _) = FdModule::sum_maps(&[b, c], &sum);
    let diff = f.then(&incl[0]).add(&g.then(&incl[1]).scale(&b.field().neg(&b.field().one())));
    let (e, proj) = sum.quotient(&diff.image_sub());
    Ok((e, incl[0].then(&proj), incl[1].then(&proj)))
}

/// Middle term of the extension `0 → N → E → M → 0` represented by a degree-one cocycle.
pub fn extension_module<K: Field>(e: &ExtSpace<K>, cocycle: &ModuleMap<K>) -> Result<FdModule<K>> {
    if e.degree != 1 {
        return Err(Error::Unsupported("extension modules exist only in degree one".into()));
    }
    Ok(pushout(&e.syz_incl, cocycle)?.0)
}

/// `Ext^1(V, Y)` with its actions: `End(Y)` by post-composition and `End(V)` by lifting to the presentation.
#[derive(Clone, Debug)]
pub struct ExtBimodule<K: Field> {
    pub ext: ExtSpace<K>,
    pub end_y: Vec<ModuleMap<K>>,
    pub end_v: Vec<ModuleMap<K>>,
    /// `left[a]`: matrix of `ξ ↦ ξ·φ_a` (post-compose with `end_y[a]`) on Ext coordinates.
    pub left: Vec<Mat<K>>,
    /// `right[b]`: matrix of `ξ ↦ ψ_b·ξ` (pre-compose with the lift of `end_v[b]`).
    pub right: Vec<Mat<K>>,
}

impl<K: Field> ExtBimodule<K> {
    /// Act on a class by post-composing with an endomorphism of `Y`.
    pub fn post(&self, coords: &[K::E], phi: &ModuleMap<K>) -> Vec<K::E> {
        self.ext.class_coords(&self.ext.cocycle(coords).then(phi))
    }

    /// Act on a class by pre-composing with the syzygy lift of an endomorphism of `V`.
    pub fn pre(&self, coords: &[K::E], psi: &ModuleMap<K>) -> Vec<K::E> {
        let lift = syzygy_lift(&self.ext, psi).expect("endomorphisms lift along projective covers");
        self.ext.class_coords(&lift.then(&self.ext.cocycle(coords)))
    }
}

/// Restriction to `Ω V` of a lift of `ψ ∈ End(V)` to the projective cover.
pub fn syzygy_lift<K: Field>(e: &ExtSpace<K>, psi: &ModuleMap<K>) -> Option<ModuleMap<K>> {
    let top = e.cover.then(psi);
    let lift0 = top.factor_through(&e.cover)?;
    e.syz_incl.then(&lift0).corestrict(&e.syz_incl)
}

pub fn ext1_bimodule<K: Field>(v: &FdModule<K>, y: &FdModule<K>) -> Result<ExtBimodule<K>> {
    let e = ext(1, v, y)?;
    let end_y = hom_space(y, y);
    let end_v = hom_space(v, v);
    let k = y.field();
    let d = e.dim;
    let unit = |i: usize| {
        let mut c = vec![k.zero(); d];
        c[i] = k.one();
        c
    };
    let mut bi = ExtBimodule { ext: e, end_y, end_v, left: Vec::new(), right: Vec::new() };
    bi.left =
        bi.end_y.iter().map(|phi| Mat::from_rows(k, d, (0..d).map(|i| bi.post(&unit(i), phi)).collect())).collect();
    bi.right =
        bi.end_v.iter().map(|psi| Mat::from_rows(k, d, (0..d).map(|i| bi.pre(&unit(i), psi)).collect())).collect();
    Ok(bi)
}

/// Whether the inclusion of a submodule `U ⊆ M` splits.
pub fn inclusion_splits<K: Field>(incl: &ModuleMap<K>) -> bool {
    let id = ModuleMap::identity(&incl.source);
    if incl.source.is_zero() {
        return true;
    }
    // Need r: M → U with incl·r = id.
    let basis = hom_space(&incl.target, &incl.source);
    let k = incl.source.field();
    let target = id.flatten();
    if basis.is_empty() {
        return false;
    }
    let rows: Vec<Vec<K::E>> = basis.iter().map(|r| incl.then(r).flatten()).collect();
    let a = Mat::from_rows(k, target.len(), rows);
    matches!(a.solve(&Mat::from_rows(k, target.len(), vec![target])), Ok(Some(_)))
}

/// Whether a submodule is a direct summand.
pub fn is_summand<K: Field>(m: &FdModule<K>, u: &Submodule<K>) -> bool {
    inclusion_splits(&m.sub_module(u).1)
}
