//! Complexes `X ↪ Q → P` in degrees −2, −1, 0 and their morphisms modulo homotopy.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Mat, Subspace};
use crate::modrep::{hom_space, FdModule, ModuleMap, Submodule};
use crate::torsion::TorsionPair;

/// `X ↪ Q → P` with `Q`, `P` projective and `X ⊆ Ker d`.
#[derive(Clone, Debug)]
pub struct StandardComplex<K: Field> {
    pub x: FdModule<K>,
    pub q: FdModule<K>,
    pub p: FdModule<K>,
    pub incl: ModuleMap<K>,
    pub d: ModuleMap<K>,
}

/// Dimension vectors of the three terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexDims {
    pub x: Vec<usize>,
    pub q: Vec<usize>,
    pub p: Vec<usize>,
}

impl<K: Field> StandardComplex<K> {
    pub fn new(incl: ModuleMap<K>, d: ModuleMap<K>) -> Result<Self> {
        if incl.target != d.source {
            return Err(Error::Shape("X → Q and Q → P do not compose".into()));
        }
        if !incl.is_injective() {
            return Err(Error::InvalidModule("X → Q is not injective".into()));
        }
        if !incl.then(&d).is_zero() {
            return Err(Error::InvalidModule("X is not contained in the kernel of Q → P".into()));
        }
        if !d.source.is_projective()? || !d.target.is_projective()? {
            return Err(Error::InvalidModule("degrees −1 and 0 must hold projective modules".into()));
        }
        Ok(Self::unchecked(incl, d))
    }

    pub(crate) fn unchecked(incl: ModuleMap<K>, d: ModuleMap<K>) -> Self {
        StandardComplex { x: incl.source.clone(), q: d.source.clone(), p: d.target.clone(), incl, d }
    }

    /// `Q → P` with a chosen submodule `X ⊆ Ker d`.
    pub fn with_x(d: ModuleMap<K>, x: &Submodule<K>) -> Result<Self> {
        let (_, incl) = d.source.sub_module(x);
        Self::new(incl, d)
    }

    /// `V[0]` in standard form: `P` covers `V`, `Q` covers `ΩV`, `X = Ker d`.
    pub fn stalk0(v: &FdModule<K>) -> Result<Self> {
        let (_, cover) = v.projective_cover()?;
        let (omega, omega_incl) = cover.kernel();
        let (_, c1) = omega.projective_cover()?;
        let d = c1.then(&omega_incl);
        let (_, incl) = d.kernel();
        Ok(Self::unchecked(incl, d))
    }

    /// `Y[1]` in standard form: `X = Ker(Q ↠ Y)`, `P = 0`.
    pub fn stalk1(y: &FdModule<K>) -> Result<Self> {
        let (q, cover) = y.projective_cover()?;
        let (_, incl) = cover.kernel();
        let zero = FdModule::zero(&y.algebra);
        Ok(Self::unchecked(incl, ModuleMap::zero(&q, &zero)))
    }

    /// The two-term complex `Q → P` read with `X = 0`.
    pub fn from_two_term(c: &TwoTermComplex<K>) -> Self {
        let zero = FdModule::zero(&c.q.algebra);
        Self::unchecked(ModuleMap::zero(&zero, &c.q), c.d.clone())
    }

    pub fn direct_sum(parts: &[&Self]) -> Result<Self> {
        let xs: Vec<&FdModule<K>> = parts.iter().map(|g| &g.x).collect();
        let qs: Vec<&FdModule<K>> = parts.iter().map(|g| &g.q).collect();
        let ps: Vec<&FdModule<K>> = parts.iter().map(|g| &g.p).collect();
        let (x, q, p) = (FdModule::direct_sum(&xs)?, FdModule::direct_sum(&qs)?, FdModule::direct_sum(&ps)?);
        let (_, xproj) = FdModule::sum_maps(&xs, &x);
        let (qinc, qproj) = FdModule::sum_maps(&qs, &q);
        let (pinc, _) = FdModule::sum_maps(&ps, &p);
        let mut incl = ModuleMap::zero(&x, &q);
        let mut d = ModuleMap::zero(&q, &p);
        for (i, g) in parts.iter().enumerate() {
            incl = incl.add(&xproj[i].then(&g.incl).then(&qinc[i]));
            d = d.add(&qproj[i].then(&g.d).then(&pinc[i]));
        }
        Ok(Self::unchecked(incl, d))
    }

    pub fn q_mod_x(&self) -> (FdModule<K>, ModuleMap<K>) {
        self.q.quotient(&self.incl.image_sub())
    }

    /// `H^{-1} = Ker d / X`.
    pub fn h_minus1(&self) -> FdModule<K> {
        let (ker, kincl) = self.d.kernel();
        let x_in_ker = self.incl.image_sub().preimage(&kincl);
        ker.quotient(&x_in_ker).0
    }

    /// `H^0 = Coker d`.
    pub fn h0(&self) -> FdModule<K> {
        self.d.cokernel().0
    }

    pub fn dims(&self) -> ComplexDims {
        ComplexDims { x: self.x.dims.clone(), q: self.q.dims.clone(), p: self.p.dims.clone() }
    }

    pub fn in_heart(&self, tp: &TorsionPair<K>) -> bool {
        tp.is_torsionfree(&self.h_minus1()) && tp.is_torsion(&self.h0())
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero() && self.p.is_zero()
    }
}

/// `Q → P` in degrees −1, 0 with finitely generated projective terms.
#[derive(Clone, Debug)]
pub struct TwoTermComplex<K: Field> {
    pub q: FdModule<K>,
    pub p: FdModule<K>,
    pub d: ModuleMap<K>,
}

impl<K: Field> TwoTermComplex<K> {
    pub fn new(d: ModuleMap<K>) -> Result<Self> {
        if !d.source.is_projective()? || !d.target.is_projective()? {
            return Err(Error::InvalidModule("two-term complexes need projective terms".into()));
        }
        Ok(TwoTermComplex { q: d.source.clone(), p: d.target.clone(), d })
    }

    pub fn h0(&self) -> FdModule<K> {
        self.d.cokernel().0
    }

    /// `M ∈ X(P•)`: every map `Q → M` factors through `d`.
    pub fn in_x_class(&self, m: &FdModule<K>) -> bool {
        let qm = hom_space(&self.q, m);
        if qm.is_empty() {
            return true;
        }
        let k = m.field();
        let width = qm[0].flatten().len();
        let through =
            Subspace::from_rows(k, width, hom_space(&self.p, m).iter().map(|g| self.d.then(g).flatten()).collect());
        through.dim() == qm.len()
    }

    /// `M ∈ Y(P•)`: `Hom(H^0, M) = 0`.
    pub fn in_y_class(&self, m: &FdModule<K>) -> bool {
        hom_space(&self.h0(), m).is_empty()
    }

    /// `Hom_K(P•, P•[1]) = Hom(Q, P) / (d·End(P) + End(Q)·d)`.
    pub fn self_ext_positive(&self) -> usize {
        let hs = hom_space(&self.q, &self.p);
        if hs.is_empty() {
            return 0;
        }
        let k = self.q.field();
        let width = hs[0].flatten().len();
        let mut rows: Vec<Vec<K::E>> = hom_space(&self.p, &self.p).iter().map(|s| self.d.then(s).flatten()).collect();
        rows.extend(hom_space(&self.q, &self.q).iter().map(|s| s.then(&self.d).flatten()));
        hs.len() - Subspace::from_rows(k, width, rows).dim()
    }

    /// `Hom_K(P•, P•[−1]) = {g: P → Q : d·g = 0, g·d = 0}`.
    pub fn self_ext_negative(&self) -> usize {
        let gs = hom_space(&self.p, &self.q);
        if gs.is_empty() {
            return 0;
        }
        let k = self.q.field();
        let rows: Vec<Vec<K::E>> = gs
            .iter()
            .map(|g| {
                let mut r = self.d.then(g).flatten();
                r.extend(g.then(&self.d).flatten());
                r
            })
            .collect();
        let width = rows[0].len();
        if width == 0 {
            return gs.len();
        }
        Mat::from_rows(k, width, rows).kernel().dim()
    }
}

/// A chain map, recorded by its components in degrees −1 and 0 (degree −2 is the restriction).
#[derive(Clone, Debug)]
pub struct ChainMap<K: Field> {
    pub q: ModuleMap<K>,
    pub p: ModuleMap<K>,
}

impl<K: Field> ChainMap<K> {
    pub fn identity(g: &StandardComplex<K>) -> Self {
        ChainMap { q: ModuleMap::identity(&g.q), p: ModuleMap::identity(&g.p) }
    }

    pub fn zero(g1: &StandardComplex<K>, g2: &StandardComplex<K>) -> Self {
        ChainMap { q: ModuleMap::zero(&g1.q, &g2.q), p: ModuleMap::zero(&g1.p, &g2.p) }
    }

    pub fn then(&self, other: &Self) -> Self {
        ChainMap { q: self.q.then(&other.q), p: self.p.then(&other.p) }
    }

    pub fn add(&self, other: &Self) -> Self {
        ChainMap { q: self.q.add(&other.q), p: self.p.add(&other.p) }
    }

    pub fn flatten(&self) -> Vec<K::E> {
        let mut v = self.q.flatten();
        v.extend(self.p.flatten());
        v
    }

    /// Block-diagonal matrix on `Q ⊕ P`.
    pub fn total(&self) -> Mat<K> {
        let k = self.q.source.field();
        Mat::block_diag(k, &[self.q.total(), self.p.total()])
    }

    pub fn combination(g1: &StandardComplex<K>, g2: &StandardComplex<K>, maps: &[Self], coeffs: &[K::E]) -> Self {
        let qs: Vec<ModuleMap<K>> = maps.iter().map(|m| m.q.clone()).collect();
        let ps: Vec<ModuleMap<K>> = maps.iter().map(|m| m.p.clone()).collect();
        ChainMap {
            q: ModuleMap::combination(&g1.q, &g2.q, &qs, coeffs),
            p: ModuleMap::combination(&g1.p, &g2.p, &ps, coeffs),
        }
    }

    /// Whether this is a chain map `g1 → g2`.
    pub fn is_chain_map(&self, g1: &StandardComplex<K>, g2: &StandardComplex<K>) -> bool {
        let square = g1.d.then(&self.p).flatten() == self.q.then(&g2.d).flatten();
        let (_, pi) = g2.q_mod_x();
        square && g1.incl.then(&self.q).then(&pi).is_zero()
    }
}

/// Basis of all chain maps `g1 → g2`.
pub fn chain_maps<K: Field>(g1: &StandardComplex<K>, g2: &StandardComplex<K>) -> Vec<ChainMap<K>> {
    let hq = hom_space(&g1.q, &g2.q);
    let hp = hom_space(&g1.p, &g2.p);
    let (nq, np) = (hq.len(), hp.len());
    if nq + np == 0 {
        return Vec::new();
    }
    let k = g1.q.field();
    let (_, pi2) = g2.q_mod_x();
    let zero_sq = ModuleMap::zero(&g1.q, &g2.p).flatten();
    let zero_x = ModuleMap::zero(&g1.x, &pi2.target).flatten();
    let mut rows: Vec<Vec<K::E>> = Vec::with_capacity(nq + np);
    for h in &hq {
        let mut r: Vec<K::E> = h.then(&g2.d).flatten().iter().map(|c| k.neg(c)).collect();
        r.extend(g1.incl.then(h).then(&pi2).flatten());
        rows.push(r);
    }
    for g in &hp {
        let mut r = g1.d.then(g).flatten();
        r.extend(zero_x.iter().cloned());
        rows.push(r);
    }
    let width = zero_sq.len() + zero_x.len();
    let sols: Vec<Vec<K::E>> = if width == 0 {
        (0..nq + np)
            .map(|i| {
                let mut v = vec![k.zero(); nq + np];
                v[i] = k.one();
                v
            })
            .collect()
    } else {
        Mat::from_rows(k, width, rows).kernel().vectors()
    };
    sols.iter()
        .map(|c| ChainMap {
            q: ModuleMap::combination(&g1.q, &g2.q, &hq, &c[..nq]),
            p: ModuleMap::combination(&g1.p, &g2.p, &hp, &c[nq..]),
        })
        .collect()
}

/// Null-homotopic maps `g1 → g2`, spanning: `(s₋₁·j, 0)` and `(d·s₀, s₀·d)`.
fn homotopies<K: Field>(g1: &StandardComplex<K>, g2: &StandardComplex<K>) -> Vec<ChainMap<K>> {
    let mut out = Vec::new();
    for s in hom_space(&g1.q, &g2.x) {
        out.push(ChainMap { q: s.then(&g2.incl), p: ModuleMap::zero(&g1.p, &g2.p) });
    }
    for s in hom_space(&g1.p, &g2.q) {
        out.push(ChainMap { q: g1.d.then(&s), p: s.then(&g2.d) });
    }
    out
}

/// `Hom_K(g1, g2)`, which equals the morphism space in the derived category for standard complexes.
#[derive(Clone, Debug)]
pub struct HomK<K: Field> {
    pub source: StandardComplex<K>,
    pub target: StandardComplex<K>,
    /// Chain maps representing a basis of the quotient.
    pub reps: Vec<ChainMap<K>>,
    null: Subspace<K>,
    solver: Mat<K>,
}

impl<K: Field> HomK<K> {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn is_null_homotopic(&self, f: &ChainMap<K>) -> bool {
        let v = f.flatten();
        v.is_empty() || self.null.contains(&v)
    }

    /// Coordinates of the class of a chain map.
    pub fn coords(&self, f: &ChainMap<K>) -> Vec<K::E> {
        if self.reps.is_empty() {
            return Vec::new();
        }
        let k = self.source.q.field();
        let v = f.flatten();
        let x = self
            .solver
            .solve(&Mat::from_rows(k, v.len(), vec![v]))
            .expect("shapes agree")
            .expect("argument is a chain map");
        x.row(0)[..self.reps.len()].to_vec()
    }

    pub fn element(&self, coords: &[K::E]) -> ChainMap<K> {
        ChainMap::combination(&self.source, &self.target, &self.reps, coords)
    }
}

pub fn hom_in_heart<K: Field>(g1: &StandardComplex<K>, g2: &StandardComplex<K>) -> HomK<K> {
    let k = g1.q.field().clone();
    let width = ChainMap::zero(g1, g2).flatten().len();
    let null = Subspace::from_rows(&k, width, homotopies(g1, g2).iter().map(|h| h.flatten()).collect());
    let mut span = null.clone();
    let mut reps = Vec::new();
    for z in chain_maps(g1, g2) {
        let v = z.flatten();
        if !span.contains(&v) {
            span = span.sum(&Subspace::from_rows(&k, width, vec![v])).expect("same width");
            reps.push(z);
        }
    }
    let solver = Mat::from_rows(&k, width, reps.iter().map(|r| r.flatten()).collect()).vstack(&null.basis);
    HomK { source: g1.clone(), target: g2.clone(), reps, null, solver }
}

/// `Hom_D(G, M[1]) = Hom(Q/X, M) / Hom(P, M)`, computed inside `Hom(Q, M)`.
pub fn hom_to_shift1<K: Field>(g: &StandardComplex<K>, m: &FdModule<K>) -> usize {
    let (qx, _) = g.q_mod_x();
    let total = hom_space(&qx, m).len();
    if total == 0 {
        return 0;
    }
    let width = ModuleMap::zero(&g.q, m).flatten().len();
    let rows: Vec<Vec<K::E>> = hom_space(&g.p, m).iter().map(|f| g.d.then(f).flatten()).collect();
    total - Subspace::from_rows(m.field(), width, rows).dim()
}

/// `Hom_D(G, M[2]) = Hom(X, M) / restrictions of Hom(Q, M)`.
pub fn hom_to_shift2<K: Field>(g: &StandardComplex<K>, m: &FdModule<K>) -> usize {
    let all = hom_space(&g.x, m);
    if all.is_empty() {
        return 0;
    }
    let k = m.field();
    let width = all[0].flatten().len();
    let rows: Vec<Vec<K::E>> = hom_space(&g.q, m).iter().map(|f| g.incl.then(f).flatten()).collect();
    all.len() - Subspace::from_rows(k, width, rows).dim()
}

/// Graded summand of `Q ⊕ P` given by rows on the total space, as submodules of `Q` and `P`.
fn split_total<K: Field>(q: &FdModule<K>, p: &FdModule<K>, rows: &Mat<K>) -> Option<(Submodule<K>, Submodule<K>)> {
    let nq = q.dim();
    let part = |m: &FdModule<K>, start: usize| -> Submodule<K> {
        let off = m.offsets();
        let parts = (0..m.dims.len())
            .map(|i| Subspace::from_mat(rows.select_cols(&(start + off[i]..start + off[i + 1]).collect::<Vec<_>>())))
            .collect();
        Submodule { parts }
    };
    let (sq, sp) = (part(q, 0), part(p, nq));
    (sq.dim() + sp.dim() == rows.rows).then_some((sq, sp))
}

/// Summand of `g` cut out by graded submodules of `Q` and `P`.
fn restrict_complex<K: Field>(
    g: &StandardComplex<K>,
    sq: &Submodule<K>,
    sp: &Submodule<K>,
) -> Result<StandardComplex<K>> {
    let (qa, iq) = g.q.sub_module(sq);
    let (_, ip) = g.p.sub_module(sp);
    let da = iq.then(&g.d).corestrict(&ip).ok_or_else(|| Error::Shape("summand not preserved by d".into()))?;
    let xa = g.incl.image_sub().intersection(sq).preimage(&iq);
    let (_, ia) = qa.sub_module(&xa);
    Ok(StandardComplex::unchecked(ia, da))
}

/// Indecomposable summands in the category of complexes, via idempotents of the chain-map algebra.
pub fn decompose_complex<K: Field, R: rand::Rng + ?Sized>(
    g: &StandardComplex<K>,
    rng: &mut R,
) -> Result<Vec<(StandardComplex<K>, bool)>> {
    let n = g.q.dim() + g.p.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let k = g.q.field();
    let endo: Vec<Mat<K>> = chain_maps(g, g).iter().map(|f| f.total()).collect();
    let mut out = Vec::new();
    for piece in crate::decomp::decompose_space(k, n, &endo, rng) {
        let (sq, sp) = split_total(&g.q, &g.p, &piece.basis)
            .ok_or_else(|| Error::Shape("summand of a complex is not graded".into()))?;
        out.push((restrict_complex(g, &sq, &sp)?, piece.local));
    }
    // Order by tops so that the stalk `P_i[0]` sits at position `i`.
    let mut keyed = Vec::with_capacity(out.len());
    for (c, local) in out {
        let key = (
            std::cmp::Reverse(c.p.top_multiplicities()?),
            std::cmp::Reverse(c.q.top_multiplicities()?),
            c.x.dims.clone(),
        );
        keyed.push((key, c, local));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, c, l)| (c, l)).collect())
}
