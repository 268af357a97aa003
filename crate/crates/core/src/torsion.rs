//! Torsion pairs: TTF pairs from idempotent ideals and pairs generated by a module.

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::algebra::{Algebra, Ideal};
use crate::decomp::seeded_rng;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homological::{ext, ext_dim, extension_module, pd_up_to, tensor, PdBound};
use crate::linalg::{Mat, Subspace};
use crate::modrep::{decompose, hom_dim, hom_space, trace, FdModule, ModuleMap, Submodule};
use crate::verdict::{Verdict, Witness};

#[derive(Clone, Debug)]
pub enum TorsionKind<K: Field> {
    /// `T = {M : aM = 0}` for the idempotent ideal `a = ReR`, `e` a sum of vertex idempotents.
    FromIdempotent { e: Vec<usize>, ideal: Ideal<K> },
    /// `T = Gen(V)`.
    FromModule { v: FdModule<K> },
}

#[derive(Clone, Debug)]
pub struct TorsionPair<K: Field> {
    pub algebra: Arc<Algebra<K>>,
    pub kind: TorsionKind<K>,
    t_regular: OnceLock<Submodule<K>>,
}

/// Sampling parameters for class-level conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub depth: usize,
    pub seed: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { depth: 1, seed: 0 }
    }
}

impl<K: Field> TorsionPair<K> {
    pub fn ttf_from_idempotent(algebra: &Arc<Algebra<K>>, e: &[usize]) -> Result<Self> {
        let n = algebra.n_vertices();
        if let Some(&bad) = e.iter().find(|&&i| i >= n) {
            return Err(Error::Parse(format!("vertex index {bad} out of range")));
        }
        let mut e: Vec<usize> = e.to_vec();
        e.sort_unstable();
        e.dedup();
        let ideal = algebra.idempotent_ideal(&e);
        Ok(TorsionPair {
            algebra: algebra.clone(),
            kind: TorsionKind::FromIdempotent { e, ideal },
            t_regular: OnceLock::new(),
        })
    }

    /// `(Gen(V), Ker Hom(V, ?))` without checking the axioms.
    pub fn generated_by(v: &FdModule<K>) -> Self {
        TorsionPair {
            algebra: v.algebra.clone(),
            kind: TorsionKind::FromModule { v: v.clone() },
            t_regular: OnceLock::new(),
        }
    }

    pub fn is_idempotent_kind(&self) -> bool {
        matches!(self.kind, TorsionKind::FromIdempotent { .. })
    }

    pub fn ideal(&self) -> Option<&Ideal<K>> {
        match &self.kind {
            TorsionKind::FromIdempotent { ideal, .. } => Some(ideal),
            TorsionKind::FromModule { .. } => None,
        }
    }

    pub fn idempotent(&self) -> Option<&[usize]> {
        match &self.kind {
            TorsionKind::FromIdempotent { e, .. } => Some(e),
            TorsionKind::FromModule { .. } => None,
        }
    }

    /// Basis elements of `e A` lying in the component `j` of a module, i.e. the maps `M_j → M_i` with `i ∈ e`.
    fn e_blocks(&self, j: usize) -> Vec<usize> {
        let a = &self.algebra;
        let e = self.idempotent().unwrap_or(&[]);
        (0..a.dim()).filter(|&b| a.tgt[b] == j && e.contains(&a.src[b])).collect()
    }

    /// The torsion radical `t(M)`.
    pub fn t_sub(&self, m: &FdModule<K>) -> Submodule<K> {
        match &self.kind {
            TorsionKind::FromIdempotent { .. } => {
                let k = m.field();
                let parts = (0..m.dims.len())
                    .map(|j| {
                        let mut big = Mat::zeros(k, m.dims[j], 0);
                        for b in self.e_blocks(j) {
                            big = big.hstack(&m.basis_block(b));
                        }
                        big.kernel()
                    })
                    .collect();
                Submodule { parts }
            }
            TorsionKind::FromModule { v } => trace(v, m),
        }
    }

    /// `c(M) = aM` for TTF pairs.
    pub fn c_sub(&self, m: &FdModule<K>) -> Option<Submodule<K>> {
        self.idempotent()?;
        let k = m.field();
        let mut rows: Vec<Vec<Vec<K::E>>> = vec![Vec::new(); m.dims.len()];
        for j in 0..m.dims.len() {
            for b in self.e_blocks(j) {
                rows[self.algebra.src[b]].extend(m.basis_block(b).row_list());
            }
        }
        let parts = rows.into_iter().enumerate().map(|(i, r)| Subspace::from_rows(k, m.dims[i], r)).collect();
        Some(m.generated(parts))
    }

    pub fn t_module(&self, m: &FdModule<K>) -> (FdModule<K>, ModuleMap<K>) {
        m.sub_module(&self.t_sub(m))
    }

    /// `M / t(M)` with its projection.
    pub fn free_quotient(&self, m: &FdModule<K>) -> (FdModule<K>, ModuleMap<K>) {
        m.quotient(&self.t_sub(m))
    }

    pub fn is_torsion(&self, m: &FdModule<K>) -> bool {
        self.t_sub(m).dim() == m.dim()
    }

    pub fn is_torsionfree(&self, m: &FdModule<K>) -> bool {
        self.t_sub(m).is_zero()
    }

    /// `t(R)` as a submodule of the regular module, cached.
    pub fn t_regular(&self) -> &Submodule<K> {
        self.t_regular.get_or_init(|| self.t_sub(&FdModule::regular(&self.algebra)))
    }

    /// `R / t(R)`.
    pub fn regular_mod_t(&self) -> FdModule<K> {
        FdModule::regular(&self.algebra).quotient(self.t_regular()).0
    }

    /// A module whose generated class is `T`: `R/a` or `V`.
    pub fn generator(&self) -> FdModule<K> {
        match &self.kind {
            TorsionKind::FromIdempotent { ideal, .. } => regular_mod_ideal(&self.algebra, ideal).0,
            TorsionKind::FromModule { v } => v.clone(),
        }
    }

    pub fn is_faithful(&self) -> Verdict {
        let t = self.t_regular();
        Verdict::from_bool(t.is_zero(), "exact test t(R) = 0", || {
            Witness::new(format!("t(R) has dimension {} with dimension vector {:?}", t.dim(), t.dims()))
        })
    }

    pub fn is_hereditary(&self, cfg: CorpusConfig) -> Verdict {
        match &self.kind {
            TorsionKind::FromIdempotent { .. } => Verdict::proven("T consists of the modules annihilated by an ideal"),
            TorsionKind::FromModule { v } => {
                if let Some(ann) = annihilator_ideal_if_torsion_class(v) {
                    return Verdict::proven(format!(
                        "T is the class of modules annihilated by an idempotent ideal of dimension {}",
                        ann.dim()
                    ));
                }
                for m in corpus(&self.algebra, cfg) {
                    if !self.is_torsion(&m) {
                        continue;
                    }
                    for s in submodule_samples(&m) {
                        if !self.is_torsion(&s) {
                            return Verdict::refuted(
                                "torsion module with a non-torsion submodule",
                                Witness::with_data(
                                    format!("submodule of dimension vector {:?}", s.dims),
                                    serde_json::to_value(s.to_json()).expect("serializable"),
                                ),
                            );
                        }
                    }
                }
                Verdict::unknown("no corpus witness against heredity and no structural criterion")
            }
        }
    }

    pub fn is_bounded(&self, cfg: CorpusConfig) -> Verdict {
        match &self.kind {
            TorsionKind::FromIdempotent { .. } => Verdict::proven("T = R/a-Mod satisfies the annihilator criterion"),
            TorsionKind::FromModule { .. } => {
                for m in corpus(&self.algebra, cfg) {
                    if !self.is_torsion(&m) {
                        continue;
                    }
                    let ann = annihilator(&m);
                    let (q, _) = regular_mod_ideal(&self.algebra, &ann);
                    if !self.is_torsion(&q) {
                        return Verdict::refuted(
                            "R/ann(T) not torsion for a torsion module T",
                            Witness::with_data(
                                format!("T with dimension vector {:?}", m.dims),
                                serde_json::to_value(m.to_json()).expect("serializable"),
                            ),
                        );
                    }
                }
                if annihilator_ideal_if_torsion_class(match &self.kind {
                    TorsionKind::FromModule { v } => v,
                    _ => unreachable!(),
                })
                .is_some()
                {
                    return Verdict::proven("T is the class of modules annihilated by an idempotent ideal");
                }
                Verdict::unknown("annihilator criterion holds on the corpus")
            }
        }
    }

    pub fn is_split(&self, cfg: CorpusConfig) -> Verdict {
        let mut checked = 0;
        for m in corpus(&self.algebra, cfg) {
            let (_, incl) = self.t_module(&m);
            if !crate::homological::inclusion_splits(&incl) {
                return Verdict::refuted(
                    "t(M) is not a direct summand",
                    Witness::with_data(
                        format!("M with dimension vector {:?}", m.dims),
                        serde_json::to_value(m.to_json()).expect("serializable"),
                    ),
                );
            }
            checked += 1;
        }
        Verdict::unknown(format!("t(M) splits off for all {checked} corpus modules"))
    }

    /// Torsion-pair axioms on a corpus: idempotency, torsion-free quotient, orthogonality.
    pub fn check_axioms_on(&self, mods: &[FdModule<K>]) -> std::result::Result<(), String> {
        for m in mods {
            let (t, _) = self.t_module(m);
            if !self.is_torsion(&t) {
                return Err(format!("t(t(M)) != t(M) for {:?}", m.dims));
            }
            let (f, _) = self.free_quotient(m);
            if !self.is_torsionfree(&f) {
                return Err(format!("t(M/tM) != 0 for {:?}", m.dims));
            }
        }
        for m in mods {
            let (t, _) = self.t_module(m);
            for n in mods {
                let (f, _) = self.free_quotient(n);
                if hom_dim(&t, &f) != 0 {
                    return Err(format!("Hom(tM, N/tN) != 0 for {:?}, {:?}", m.dims, n.dims));
                }
            }
        }
        Ok(())
    }
}

/// `(R/I, projection)` for a two-sided ideal `I`.
pub fn regular_mod_ideal<K: Field>(a: &Arc<Algebra<K>>, ideal: &Ideal<K>) -> (FdModule<K>, ModuleMap<K>) {
    let reg = FdModule::regular(a);
    let sub = ideal_submodule(a, ideal);
    reg.quotient(&sub)
}

/// A two-sided ideal as a submodule of the regular left module.
pub fn ideal_submodule<K: Field>(a: &Arc<Algebra<K>>, ideal: &Ideal<K>) -> Submodule<K> {
    split_by(a, ideal, |b| a.src[b])
}

/// A submodule of the regular left module as a subspace of `A`; an ideal when it is two-sided.
pub fn submodule_ideal<K: Field>(a: &Algebra<K>, sub: &Submodule<K>) -> Ideal<K> {
    let k = &a.field;
    let mut rows = Vec::new();
    for (j, part) in sub.parts.iter().enumerate() {
        let comp: Vec<usize> = (0..a.dim()).filter(|&b| a.src[b] == j).collect();
        for v in part.vectors() {
            let mut row = vec![k.zero(); a.dim()];
            for (c, &b) in comp.iter().enumerate() {
                row[b] = v[c].clone();
            }
            rows.push(row);
        }
    }
    Ideal { basis: Subspace::from_rows(k, a.dim(), rows) }
}

/// Coordinates of a Peirce-graded subspace of `A`, split by a vertex function on basis elements.
fn split_by<K: Field>(a: &Algebra<K>, ideal: &Ideal<K>, vertex: impl Fn(usize) -> usize) -> Submodule<K> {
    let k = &a.field;
    let n = a.n_vertices();
    let comps: Vec<Vec<usize>> = (0..n).map(|j| (0..a.dim()).filter(|&b| vertex(b) == j).collect()).collect();
    let parts = (0..n)
        .map(|j| {
            let rows = ideal.basis.vectors().iter().map(|v| comps[j].iter().map(|&b| v[b].clone()).collect()).collect();
            Subspace::from_rows(k, comps[j].len(), rows)
        })
        .collect();
    Submodule { parts }
}

/// A two-sided ideal as a right module, i.e. a left module over the opposite algebra.
pub fn ideal_as_right_module<K: Field>(a: &Arc<Algebra<K>>, op: &Arc<Algebra<K>>, ideal: &Ideal<K>) -> FdModule<K> {
    let sub = split_by(a, ideal, |b| a.tgt[b]);
    FdModule::regular(op).sub_module(&sub).0
}

/// `ann(M) = {x : xM = 0}`.
pub fn annihilator<K: Field>(m: &FdModule<K>) -> Ideal<K> {
    let a = &m.algebra;
    let k = m.field();
    let n = a.n_vertices();
    // Each basis element acts in one Peirce block; flatten all blocks side by side.
    let mut block_off = vec![vec![0usize; n]; n];
    let mut total = 0;
    for i in 0..n {
        for j in 0..n {
            block_off[i][j] = total;
            total += m.dims[i] * m.dims[j];
        }
    }
    let rows: Vec<Vec<K::E>> = (0..a.dim())
        .map(|b| {
            let mut row = vec![k.zero(); total];
            let (i, j) = (a.src[b], a.tgt[b]);
            let blk = m.basis_block(b);
            for (p, x) in blk.data.iter().enumerate() {
                row[block_off[i][j] + p] = x.clone();
            }
            row
        })
        .collect();
    Ideal { basis: Mat::from_rows(k, total, rows).kernel() }
}

/// Whether `x N = 0` for all `x` in the ideal.
pub fn annihilates<K: Field>(ideal: &Ideal<K>, n: &FdModule<K>) -> bool {
    let a = &n.algebra;
    let nv = a.n_vertices();
    ideal.basis.vectors().iter().all(|x| {
        (0..nv).all(|i| (0..nv).all(|j| n.dims[i] == 0 || n.dims[j] == 0 || n.element_block(x, i, j).is_zero()))
    })
}

/// When `Gen(V)` is the class of modules annihilated by `ann(V)` (that is, `R/ann(V) ∈ Gen(V)` and the ideal
/// is idempotent), return the ideal.
pub fn annihilator_ideal_if_torsion_class<K: Field>(v: &FdModule<K>) -> Option<Ideal<K>> {
    let ann = annihilator(v);
    if !ann.is_idempotent(&v.algebra) {
        return None;
    }
    let (q, _) = regular_mod_ideal(&v.algebra, &ann);
    in_gen(v, &q).then_some(ann)
}

pub fn in_gen<K: Field>(v: &FdModule<K>, m: &FdModule<K>) -> bool {
    trace(v, m).dim() == m.dim()
}

/// `V^h → M` summing a basis of `Hom(V, M)`.
pub fn universal_from<K: Field>(v: &FdModule<K>, m: &FdModule<K>) -> ModuleMap<K> {
    let homs = hom_space(v, m);
    let src = v.power(homs.len());
    let k = m.field();
    let blocks = (0..m.dims.len())
        .map(|i| homs.iter().fold(Mat::zeros(k, 0, m.dims[i]), |acc, f| acc.vstack(&f.blocks[i])))
        .collect();
    ModuleMap { source: src, target: m.clone(), blocks }
}

/// `M → V^h` from a basis of `Hom(M, V)`.
pub fn universal_to<K: Field>(m: &FdModule<K>, v: &FdModule<K>) -> ModuleMap<K> {
    let homs = hom_space(m, v);
    let tgt = v.power(homs.len());
    let k = m.field();
    let blocks = (0..m.dims.len())
        .map(|i| homs.iter().fold(Mat::zeros(k, m.dims[i], 0), |acc, f| acc.hstack(&f.blocks[i])))
        .collect();
    ModuleMap { source: m.clone(), target: tgt, blocks }
}

pub fn in_cogen<K: Field>(v: &FdModule<K>, m: &FdModule<K>) -> bool {
    universal_to(m, v).is_injective()
}

/// `M ∈ Pres(V)`: generated by `V` with the kernel of the universal map also generated by `V`.
pub fn in_pres<K: Field>(v: &FdModule<K>, m: &FdModule<K>) -> bool {
    if !in_gen(v, m) {
        return false;
    }
    let (ker, _) = universal_from(v, m).kernel();
    in_gen(v, &ker)
}

/// `V` as a module over `R / I` when `I V = 0`.
pub fn module_over_quotient<K: Field>(v: &FdModule<K>, ideal: &Ideal<K>, q: &Arc<Algebra<K>>) -> FdModule<K> {
    let a = &v.algebra;
    let free = ideal.basis.free_coords();
    let kept_vertices: Vec<usize> = (0..a.n_vertices()).filter(|x| free.contains(x)).collect();
    let dims: Vec<usize> = kept_vertices.iter().map(|&x| v.dims[x]).collect();
    let action = q.gens.iter().map(|&g| v.basis_block(free[g])).collect();
    FdModule::new(q.clone(), dims, action).expect("annihilated module descends to the quotient")
}

/// The torsion pair generated by `V` and a verdict on the torsion-pair axioms (extension closure of `Gen(V)`).
pub fn pair_from_module<K: Field>(v: &FdModule<K>, cfg: CorpusConfig) -> Result<(TorsionPair<K>, Verdict)> {
    let tp = TorsionPair::generated_by(v);
    if v.is_zero() {
        return Ok((tp, Verdict::proven("V = 0 generates the zero class")));
    }
    if partial_tilting(v)? {
        return Ok((
            tp,
            Verdict::proven("pd V <= 1 and Ext^1(V,V) = 0, so Ext^1(V, Gen V) = 0 and Gen V is extension-closed"),
        ));
    }
    let ann = annihilator(v);
    if !ann.basis.is_zero() && tensor_vanishes(&v.algebra, &ann, v)? {
        let q = Arc::new(v.algebra.quotient(&ann)?);
        let vq = module_over_quotient(v, &ann, &q);
        if partial_tilting(&vq)? {
            return Ok((
                tp,
                Verdict::proven(
                    "ann(V) ⊗ V = 0 and V is partial tilting over R/ann(V), so Ext^1(V, Gen V) = 0 and Gen V is extension-closed",
                ),
            ));
        }
    }
    if let Some(w) = extension_escaping_gen(v, cfg)? {
        return Ok((tp, Verdict::refuted("an extension of modules in Gen(V) escapes Gen(V)", w)));
    }
    Ok((tp, Verdict::unknown("no extension escaping Gen(V) in the corpus and no structural criterion")))
}

fn partial_tilting<K: Field>(v: &FdModule<K>) -> Result<bool> {
    Ok(matches!(pd_up_to(v, 1)?, PdBound::Exact(_)) && ext_dim(1, v, v)? == 0)
}

/// Whether `I ⊗_R V = 0` for a two-sided ideal `I`.
pub fn tensor_vanishes<K: Field>(a: &Arc<Algebra<K>>, ideal: &Ideal<K>, v: &FdModule<K>) -> Result<bool> {
    let op = Arc::new(a.opposite());
    let right = ideal_as_right_module(a, &op, ideal);
    Ok(tensor(&right, v)?.dim == 0)
}

fn extension_escaping_gen<K: Field>(v: &FdModule<K>, cfg: CorpusConfig) -> Result<Option<Witness>> {
    let tors: Vec<FdModule<K>> =
        corpus(&v.algebra, cfg).into_iter().filter(|m| m.dim() <= 2 * v.dim().max(4) && in_gen(v, m)).collect();
    let mut pool = tors.clone();
    for s in decompose(v, &mut seeded_rng(cfg.seed)) {
        pool.push(s.module);
    }
    for m in &pool {
        for n in &pool {
            let e = ext(1, m, n)?;
            for c in &e.cocycles {
                let mid = extension_module(&e, c)?;
                if !in_gen(v, &mid) {
                    return Ok(Some(Witness::with_data(
                        format!("extension of {:?} by {:?} with middle term {:?}", m.dims, n.dims, mid.dims),
                        serde_json::to_value(mid.to_json()).expect("serializable"),
                    )));
                }
            }
        }
    }
    Ok(None)
}

/// Submodules worth testing: radical, socle, and cyclic submodules on basis vectors.
fn submodule_samples<K: Field>(m: &FdModule<K>) -> Vec<FdModule<K>> {
    let mut out = Vec::new();
    if let Ok(r) = m.radical_sub() {
        out.push(m.sub_module(&r).0);
    }
    if let Ok(s) = m.socle_sub() {
        out.push(m.sub_module(&s).0);
    }
    let k = m.field();
    for i in 0..m.dims.len() {
        for c in 0..m.dims[i] {
            let mut parts: Vec<Subspace<K>> = m.dims.iter().map(|&d| Subspace::zero(k, d)).collect();
            let mut v = vec![k.zero(); m.dims[i]];
            v[c] = k.one();
            parts[i] = Subspace::from_rows(k, m.dims[i], vec![v]);
            out.push(m.sub_module(&m.generated(parts)).0);
        }
    }
    out
}

/// Cheap isomorphism invariants used to deduplicate the corpus.
pub fn module_signature<K: Field>(m: &FdModule<K>) -> (Vec<usize>, Vec<usize>, Vec<usize>, Vec<Vec<usize>>, usize) {
    let top = m.top_multiplicities().unwrap_or_default();
    let soc = m.socle_multiplicities().unwrap_or_default();
    let layers = m.radical_layers().unwrap_or_default();
    (m.dims.clone(), top, soc, layers, hom_dim(m, m))
}

/// Deterministic sample family of modules.
pub fn corpus<K: Field>(a: &Arc<Algebra<K>>, cfg: CorpusConfig) -> Vec<FdModule<K>> {
    let n = a.n_vertices();
    let mut raw: Vec<FdModule<K>> = Vec::new();
    for i in 0..n {
        raw.push(FdModule::simple(a, i));
    }
    for i in 0..n {
        raw.push(FdModule::projective(a, i));
    }
    for i in 0..n {
        raw.push(FdModule::injective(a, i));
    }
    if cfg.depth >= 1 {
        let base: Vec<FdModule<K>> = raw.clone();
        for m in &base {
            // Radical powers and the corresponding quotients.
            let mut cur = m.clone();
            while let Ok(r) = cur.radical_sub() {
                if r.is_zero() || r.dim() == cur.dim() {
                    break;
                }
                let (sub, incl) = cur.sub_module(&r);
                let img = incl.image_sub();
                raw.push(cur.quotient(&img).0);
                raw.push(sub.clone());
                cur = sub;
            }
            let mut syz = m.clone();
            for _ in 0..cfg.depth {
                match syz.projective_cover() {
                    Ok((_, c)) => {
                        syz = c.kernel().0;
                        if syz.is_zero() {
                            break;
                        }
                        raw.push(syz.clone());
                    }
                    Err(_) => break,
                }
            }
        }
        // Quotients of projectives by cyclic submodules on basis vectors and pairwise sums.
        let k = &a.field;
        for i in 0..n {
            let p = FdModule::projective(a, i);
            let pd = &p.dims;
            let vecs: Vec<(usize, Vec<K::E>)> = (0..n)
                .flat_map(|j| {
                    (0..pd[j]).map(move |c| {
                        let mut v = vec![k.zero(); pd[j]];
                        v[c] = k.one();
                        (j, v)
                    })
                })
                .collect();
            let cyclic = |gens: &[(usize, Vec<K::E>)]| {
                let mut parts: Vec<Vec<Vec<K::E>>> = vec![Vec::new(); n];
                for (j, v) in gens {
                    parts[*j].push(v.clone());
                }
                let parts = parts.into_iter().enumerate().map(|(j, r)| Subspace::from_rows(k, p.dims[j], r)).collect();
                p.generated(parts)
            };
            for x in 0..vecs.len() {
                let sub = cyclic(&vecs[x..=x]);
                if sub.dim() < p.dim() {
                    raw.push(p.quotient(&sub).0);
                }
                for y in x + 1..vecs.len() {
                    if vecs[x].0 == vecs[y].0 {
                        let s: Vec<K::E> = vecs[x].1.iter().zip(&vecs[y].1).map(|(u, w)| k.add(u, w)).collect();
                        let sub = cyclic(&[(vecs[x].0, s)]);
                        if sub.dim() < p.dim() {
                            raw.push(p.quotient(&sub).0);
                        }
                    }
                }
            }
        }
        // Seeded random extensions between small members.
        let mut rng = seeded_rng(cfg.seed ^ 0xc0ffee);
        let small: Vec<FdModule<K>> = dedup(raw.clone()).into_iter().filter(|m| m.dim() <= 4 && !m.is_zero()).collect();
        let wanted = 12 * cfg.depth;
        let mut made = 0;
        let mut attempts = 0;
        while made < wanted && attempts < 8 * wanted && !small.is_empty() {
            attempts += 1;
            let m = &small[rng.gen_range(0..small.len())];
            let nn = &small[rng.gen_range(0..small.len())];
            let Ok(e) = ext(1, m, nn) else { continue };
            if e.dim == 0 {
                continue;
            }
            let coeffs: Vec<K::E> = (0..e.dim).map(|_| k.random(&mut rng)).collect();
            if coeffs.iter().all(|c| k.is_zero(c)) {
                continue;
            }
            if let Ok(mid) = extension_module(&e, &e.cocycle(&coeffs)) {
                raw.push(mid);
                made += 1;
            }
        }
    }
    dedup(raw)
}

fn dedup<K: Field>(mods: Vec<FdModule<K>>) -> Vec<FdModule<K>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in mods {
        if m.is_zero() {
            continue;
        }
        if seen.insert(module_signature(&m)) {
            out.push(m);
        }
    }
    out
}
