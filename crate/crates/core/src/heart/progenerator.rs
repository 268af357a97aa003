//! Progenerator constructions for hearts, and the criteria that certify them.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, Ideal};
use crate::decomp::seeded_rng;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homological::{ext, ext_dim, inclusion_splits, is_summand, pd_up_to, ExtSpace, PdBound};
use crate::linalg::Mat;
use crate::modrep::{decompose, hom_space, indecomposables_isomorphic, reject, FdModule, ModuleMap};
use crate::torsion::{
    annihilator, corpus, ideal_submodule, in_gen, in_pres, module_over_quotient, regular_mod_ideal, submodule_ideal,
    tensor_vanishes, universal_to, CorpusConfig, TorsionKind, TorsionPair,
};
use crate::verdict::{Verdict, Witness};

use super::complex::{ComplexDims, StandardComplex, TwoTermComplex};
use super::conditions::{check_conditions_135, check_standard_conditions, reject_torsion, ConditionReport};
use super::endring::{basic_algebra, end_ring, product_algebra, EndRingSummary};

pub const LEFT_SPLIT: &str = "left-split TTF decomposition";
pub const STALK_SUM: &str = "sum of stalk complexes";
pub const TTF_COMPLEX: &str = "TTF progenerator complex";

fn require_ttf<K: Field>(tp: &TorsionPair<K>) -> Result<&Ideal<K>> {
    tp.ideal()
        .ok_or_else(|| Error::Unsupported("the construction needs a TTF pair given by an idempotent ideal".into()))
}

fn module_witness<K: Field>(what: String, m: &FdModule<K>) -> Witness {
    Witness::with_data(what, serde_json::to_value(m.to_json()).unwrap_or_default())
}

/// Pairwise non-isomorphic indecomposable summands.
pub(crate) fn distinct_summands<K: Field>(m: &FdModule<K>, seed: u64) -> Result<Vec<FdModule<K>>> {
    let mut out: Vec<FdModule<K>> = Vec::new();
    for s in decompose(m, &mut seeded_rng(seed)) {
        if !s.local {
            return Err(Error::Unsupported("a summand could not be split into indecomposables".into()));
        }
        if !out.iter().any(|o| o.dims == s.module.dims && indecomposables_isomorphic(o, &s.module)) {
            out.push(s.module);
        }
    }
    Ok(out)
}

/// Whether every indecomposable summand of `m` is isomorphic to one of `pool`.
pub(crate) fn in_add<K: Field>(pool: &[FdModule<K>], m: &FdModule<K>, seed: u64) -> Result<bool> {
    Ok(distinct_summands(m, seed)?
        .iter()
        .all(|s| pool.iter().any(|o| o.dims == s.dims && indecomposables_isomorphic(o, s))))
}

/// `X/t(X) → Y/t(Y)` induced by a monomorphism `X ↪ Y` splits.
fn free_parts_split<K: Field>(tp: &TorsionPair<K>, incl: &ModuleMap<K>) -> bool {
    let (_, px) = tp.free_quotient(&incl.source);
    let (_, py) = tp.free_quotient(&incl.target);
    incl.then(&py).descend(&px).as_ref().is_some_and(inclusion_splits)
}

/// The complex `X ↪ Q → R` built from the projective cover `p: P(a) ↠ a` of the ideal: with `C = P(a)/t(Ker p)`
/// and `U = C/t(C)`, `Q` is `P(a)` plus the projective cover of `U`, and `X` collects `t(Ker p)` and the kernel
/// of that cover. Then `H^0 = R/a` and `H^-1 = U ⊕ Ker p / t(Ker p)`.
pub fn ttf_progenerator<K: Field>(tp: &TorsionPair<K>) -> Result<StandardComplex<K>> {
    let a = &tp.algebra;
    let ideal = require_ttf(tp)?;
    let reg = FdModule::regular(a);
    let (am, j) = reg.sub_module(&ideal_submodule(a, ideal));
    let zero = FdModule::zero(a);
    if am.is_zero() {
        return StandardComplex::new(ModuleMap::zero(&zero, &zero), ModuleMap::zero(&zero, &reg));
    }
    let (pa, p) = am.projective_cover()?;
    let (ker, kincl) = p.kernel();
    let tk = tp.t_sub(&ker).image(&kincl);
    let (c, _) = pa.quotient(&tk);
    let (u, _) = tp.free_quotient(&c);
    let part_a = StandardComplex::with_x(p.then(&j), &tk)?;
    if u.is_zero() {
        return Ok(part_a);
    }
    let part_u = StandardComplex::stalk1(&u)?;
    StandardComplex::direct_sum(&[&part_u, &part_a])
}

/// Coordinates of module maps in a fixed basis.
struct MapBasis<K: Field> {
    maps: Vec<ModuleMap<K>>,
    source: FdModule<K>,
    target: FdModule<K>,
    solver: Mat<K>,
}

impl<K: Field> MapBasis<K> {
    fn new(m: &FdModule<K>, n: &FdModule<K>) -> Self {
        let maps = hom_space(m, n);
        let width = ModuleMap::zero(m, n).flatten().len();
        let solver = Mat::from_rows(m.field(), width, maps.iter().map(|f| f.flatten()).collect());
        MapBasis { maps, source: m.clone(), target: n.clone(), solver }
    }

    fn coords(&self, f: &ModuleMap<K>) -> Vec<K::E> {
        if self.maps.is_empty() {
            return Vec::new();
        }
        let v = f.flatten();
        let k = self.source.field();
        let x =
            self.solver.solve(&Mat::from_rows(k, v.len(), vec![v])).expect("shapes agree").expect("map lies in Hom");
        x.row_vec(0)
    }

    fn element(&self, c: &[K::E]) -> ModuleMap<K> {
        ModuleMap::combination(&self.source, &self.target, &self.maps, c)
    }
}

enum TriHom<K: Field> {
    Maps(MapBasis<K>),
    Ext(ExtSpace<K>),
    Zero,
}

impl<K: Field> TriHom<K> {
    fn dim(&self) -> usize {
        match self {
            TriHom::Maps(b) => b.maps.len(),
            TriHom::Ext(e) => e.dim,
            TriHom::Zero => 0,
        }
    }
}

/// The triangular ring with `End(V)` and `End(Y)` on the diagonal and `Ext^1(V, Y)` as bimodule, as a basic
/// algebra on the indecomposable summands of `V` (placed in degree 0) and `Y` (in degree −1).
pub fn triangular_ring<K: Field>(v: &FdModule<K>, y: &FdModule<K>, seed: u64) -> Result<Algebra<K>> {
    let k = y.field().clone();
    let vs = if v.is_zero() { Vec::new() } else { distinct_summands(v, seed)? };
    let ys = if y.is_zero() { Vec::new() } else { distinct_summands(y, seed)? };
    let nv = vs.len();
    let objs: Vec<&FdModule<K>> = vs.iter().chain(&ys).collect();
    let n = objs.len();
    let mut homs: Vec<Vec<TriHom<K>>> = Vec::with_capacity(n);
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            row.push(match (a < nv, b < nv) {
                (true, false) => TriHom::Ext(ext(1, objs[a], objs[b])?),
                (false, true) => TriHom::Zero,
                _ => TriHom::Maps(MapBasis::new(objs[a], objs[b])),
            });
        }
        homs.push(row);
    }
    let hom_dims: Vec<Vec<usize>> = homs.iter().map(|r| r.iter().map(TriHom::dim).collect()).collect();
    let identity: Vec<Vec<K::E>> = (0..n)
        .map(|a| match &homs[a][a] {
            TriHom::Maps(b) => b.coords(&ModuleMap::identity(objs[a])),
            _ => unreachable!("diagonal blocks are endomorphism rings"),
        })
        .collect();
    let compose = |a: usize, b: usize, c: usize, x: &[K::E], y: &[K::E]| -> Vec<K::E> {
        match (&homs[a][b], &homs[b][c], &homs[a][c]) {
            (TriHom::Maps(f), TriHom::Maps(g), TriHom::Maps(h)) => h.coords(&f.element(x).then(&g.element(y))),
            (TriHom::Maps(f), TriHom::Ext(eb), TriHom::Ext(ea)) => {
                // Lift ψ: V_a → V_b to the syzygies and precompose the cocycle.
                let psi = f.element(x);
                let lift0 = ea.cover.then(&psi).factor_through(&eb.cover).expect("maps lift along projective covers");
                let omega = ea.syz_incl.then(&lift0).corestrict(&eb.syz_incl).expect("lift preserves syzygies");
                ea.class_coords(&omega.then(&eb.cocycle(y)))
            }
            (TriHom::Ext(e), TriHom::Maps(g), TriHom::Ext(ec)) => ec.class_coords(&e.cocycle(x).then(&g.element(y))),
            (_, _, t) => vec![k.zero(); t.dim()],
        }
    };
    let labels = (1..=n).map(|i| i.to_string()).collect();
    Ok(basic_algebra(&k, labels, &hom_dims, &identity, &compose)?.0)
}

/// Outcome of the stalk-complex criterion for a TTF pair.
#[derive(Clone, Debug)]
pub struct StalkReport<K: Field> {
    pub verdict: Verdict,
    /// `(R/a)[0] ⊕ (a/t(a))[1]` in standard form, when the criterion holds.
    pub complex: Option<StandardComplex<K>>,
    /// The triangular ring, when the criterion holds.
    pub ring: Option<Arc<Algebra<K>>>,
    /// Whether the triangular ring agrees in invariants with the endomorphism ring of the complex.
    pub cross_check: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StalkSummary {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub end_ring: Option<EndRingSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<bool>,
}

impl<K: Field> StalkReport<K> {
    pub fn summary(&self) -> Result<StalkSummary> {
        Ok(StalkSummary {
            verdict: self.verdict.clone(),
            end_ring: self.ring.as_ref().map(|r| EndRingSummary::of(r)).transpose()?,
            cross_check: self.cross_check,
        })
    }
}

fn simple_label<K: Field>(m: &FdModule<K>) -> String {
    let a = &m.algebra;
    if m.dim() == 1 {
        let v = m.dims.iter().position(|&d| d == 1).expect("one-dimensional");
        format!("S{}", a.vertex_labels[v])
    } else {
        format!("module with dimension vector {:?}", m.dims)
    }
}

/// Whether `(R/a)[0] ⊕ (a/t(a))[1]` is a progenerator of the heart. The criterion is that `Ext^2(R/a, -)` vanishes
/// on `F`, which holds exactly when `Ω²/t(Ω²) → P₁/t(P₁)` splits for `Ω² ⊆ P₁` the second syzygy of `R/a`.
pub fn stalk_progenerator_check<K: Field>(tp: &TorsionPair<K>, seed: u64) -> Result<StalkReport<K>> {
    let a = &tp.algebra;
    let ideal = require_ttf(tp)?;
    let (v, _) = regular_mod_ideal(a, ideal);
    let holds = if v.is_zero() {
        true
    } else {
        let (_, cover) = v.projective_cover()?;
        let (omega, _) = cover.kernel();
        let (_, c1) = omega.projective_cover()?;
        let (_, omega2) = c1.kernel();
        free_parts_split(tp, &omega2)
    };
    if !holds {
        let summands = distinct_summands(&v, seed)?;
        for vi in &summands {
            for j in 0..a.n_vertices() {
                let s = FdModule::simple(a, j);
                if tp.is_torsionfree(&s) && ext_dim(2, vi, &s)? != 0 {
                    let w = module_witness(format!("Ext^2({}, {}) ≠ 0", simple_label(vi), simple_label(&s)), &s);
                    return Ok(StalkReport {
                        verdict: Verdict::refuted("Ext^2(R/a, -) vanishes on F", w),
                        complex: None,
                        ring: None,
                        cross_check: None,
                    });
                }
            }
        }
        let w = Witness::new("Ext^2(R/a, Ω²/t(Ω²)) ≠ 0 for the second syzygy Ω² of R/a");
        return Ok(StalkReport {
            verdict: Verdict::refuted("Ext^2(R/a, -) vanishes on F", w),
            complex: None,
            ring: None,
            cross_check: None,
        });
    }
    let reg = FdModule::regular(a);
    let (am, _) = reg.sub_module(&ideal_submodule(a, ideal));
    let (y, _) = tp.free_quotient(&am);
    let ring = triangular_ring(&v, &y, seed)?;
    let g = StandardComplex::direct_sum(&[&StandardComplex::stalk0(&v)?, &StandardComplex::stalk1(&y)?])?;
    let from_complex = end_ring(&g, seed)?;
    let cross = ring.invariants()?.matches(&from_complex.algebra.invariants()?);
    Ok(StalkReport {
        verdict: Verdict::proven("Ext^2(R/a, -) vanishes on F: Ω²/t(Ω²) → P₁/t(P₁) is a split monomorphism"),
        complex: Some(g),
        ring: Some(Arc::new(ring)),
        cross_check: Some(cross),
    })
}

/// Whether `P•` induces the torsion pair as an HKM pair with `t(Ker d) ↪ Q → P` a progenerator of the heart.
pub fn hkm_check<K: Field>(c: &TwoTermComplex<K>, tp: &TorsionPair<K>, cfg: CorpusConfig) -> Result<Verdict> {
    let v = c.h0();
    if !c.in_x_class(&v) {
        return Ok(Verdict::refuted("H^0(P•) ∈ X(P•)", module_witness("H^0(P•) outside X(P•)".into(), &v)));
    }
    let (ker, kincl) = c.d.kernel();
    let tk = tp.t_sub(&ker).image(&kincl);
    let g = StandardComplex::with_x(c.d.clone(), &tk)?;
    let report = check_standard_conditions(&g, tp, cfg)?;
    if report.progenerator {
        return Ok(Verdict::proven("H^0 ∈ X(P•) and t(Ker d) ↪ Q → P satisfies the standard conditions"));
    }
    let kd = c.d.kernel_sub();
    let rej = match reject_torsion(tp, &c.q) {
        Some(r) => {
            Verdict::from_bool(r.contains(&kd), "exact test Ker d ⊆ Rej_T(Q)", || Witness::new("Ker d ⊄ Rej_T(Q)"))
        }
        None => {
            let bad = corpus(&tp.algebra, cfg).into_iter().find(|m| tp.is_torsion(m) && !reject(&c.q, m).contains(&kd));
            match bad {
                Some(m) => Verdict::refuted(
                    "Ker d ⊆ Rej_M(Q) for torsion M",
                    module_witness("torsion M with Ker d ⊄ Rej_M(Q)".into(), &m),
                ),
                None => Verdict::unknown("Ker d ⊆ Rej_M(Q) on all torsion corpus modules"),
            }
        }
    };
    let mods = corpus(&tp.algebra, cfg);
    let escaping = mods.iter().find(|m| c.in_x_class(m) && !tp.is_torsion(m));
    let x_in_t = match escaping {
        Some(m) => Verdict::refuted("X(P•) ⊆ T", module_witness("module in X(P•) outside T".into(), m)),
        None => Verdict::unknown(format!("X(P•) ⊆ T on {} corpus modules", mods.len())),
    };
    Ok(Verdict::all([report.conditions[0].clone(), report.conditions[4].clone(), rej, x_in_t]))
}

/// Conditions 1, 3, 5 for `P•` read with `X = 0`, and vanishing of `Hom_D(P•, P•[±1])`.
pub fn tilting_complex_check<K: Field>(
    c: &TwoTermComplex<K>,
    tp: &TorsionPair<K>,
    cfg: CorpusConfig,
) -> Result<Verdict> {
    let g = StandardComplex::from_two_term(c);
    let [c1, c3, c5] = check_conditions_135(&g, tp, cfg)?;
    let pos = c.self_ext_positive();
    let neg = c.self_ext_negative();
    Ok(Verdict::all([
        c1,
        c3,
        c5,
        Verdict::from_bool(pos == 0, "exact Hom_D(P•, P•[1]) = 0", || {
            Witness::new(format!("Hom_D(P•, P•[1]) has dimension {pos}"))
        }),
        Verdict::from_bool(neg == 0, "exact Hom_D(P•, P•[-1]) = 0", || {
            Witness::new(format!("Hom_D(P•, P•[-1]) has dimension {neg}"))
        }),
    ]))
}

/// `pd V ≤ 1`, `Ext^1(V, V) = 0`, and `0 → R → V' → V'' → 0` with `V', V'' ∈ add(V)`.
pub fn classical_1tilting_check<K: Field>(v: &FdModule<K>, seed: u64) -> Result<Verdict> {
    if let PdBound::GreaterThan(_) = pd_up_to(v, 1)? {
        return Ok(Verdict::refuted("pd V ≤ 1", module_witness("V has projective dimension > 1".into(), v)));
    }
    let e = ext_dim(1, v, v)?;
    if e != 0 {
        return Ok(Verdict::refuted("Ext^1(V, V) = 0", Witness::new(format!("Ext^1(V, V) has dimension {e}"))));
    }
    let u = universal_to(&FdModule::regular(&v.algebra), v);
    if !u.is_injective() {
        let (kmod, _) = u.kernel();
        return Ok(Verdict::refuted(
            "R embeds in add(V)",
            module_witness("kernel of the universal map R → V^h".into(), &kmod),
        ));
    }
    let (coker, _) = u.cokernel();
    let pool = distinct_summands(v, seed)?;
    let ok = coker.is_zero() || in_add(&pool, &coker, seed)?;
    Ok(Verdict::from_bool(
        ok,
        "pd V ≤ 1, Ext^1(V, V) = 0 and the universal map R → V^h has cokernel in add(V)",
        || module_witness("cokernel of R → V^h outside add(V)".into(), &coker),
    ))
}

/// Whether `Gen(V)` equals the modules subgenerated by `V` with `Ext^1(V, -) = 0`.
pub fn quasi_tilting_check<K: Field>(v: &FdModule<K>, cfg: CorpusConfig) -> Result<Verdict> {
    if v.is_zero() {
        return Ok(Verdict::proven("V = 0"));
    }
    let ann = annihilator(v);
    let q = Arc::new(v.algebra.quotient(&ann)?);
    let vq = module_over_quotient(v, &ann, &q);
    if classical_1tilting_check(&vq, cfg.seed)?.is_proven() {
        let partial = matches!(pd_up_to(v, 1)?, PdBound::Exact(_)) && ext_dim(1, v, v)? == 0;
        if partial || tensor_vanishes(&v.algebra, &ann, v)? {
            return Ok(Verdict::proven(
                "V is tilting over R/ann(V) and Ext^1_R(V, Gen V) = 0 (pd V ≤ 1 with Ext^1(V, V) = 0, or ann(V) ⊗ V = 0)",
            ));
        }
    }
    let mut checked = 0;
    for m in corpus(&v.algebra, cfg) {
        if !in_gen(v, &m) {
            continue;
        }
        checked += 1;
        if !in_pres(v, &m) {
            return Ok(Verdict::refuted(
                "Gen(V) = Pres(V)",
                module_witness("module in Gen(V) outside Pres(V)".into(), &m),
            ));
        }
        if ext_dim(1, v, &m)? != 0 {
            return Ok(Verdict::refuted(
                "Ext^1(V, Gen V) = 0",
                module_witness("module M in Gen(V) with Ext^1(V, M) ≠ 0".into(), &m),
            ));
        }
    }
    Ok(Verdict::unknown(format!("Gen(V) = Pres(V) ⊆ Ker Ext^1(V, -) on {checked} corpus modules")))
}

/// A finitely generated projective `P = ⊕_{i∈S} P_i` with `T = Gen(P)`, searched over vertex subsets.
pub fn left_ttf_modular_check<K: Field>(tp: &TorsionPair<K>) -> Result<(Verdict, Option<Vec<usize>>)> {
    let a = &tp.algebra;
    let n = a.n_vertices();
    let mut subsets: Vec<Vec<usize>> = (0..1usize << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect();
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    let gen = tp.generator();
    for s in subsets {
        let parts: Vec<FdModule<K>> = s.iter().map(|&i| FdModule::projective(a, i)).collect();
        let p =
            if parts.is_empty() { FdModule::zero(a) } else { FdModule::direct_sum(&parts.iter().collect::<Vec<_>>())? };
        let ok = match &tp.kind {
            TorsionKind::FromModule { v } => in_gen(&p, v) && in_gen(v, &p),
            TorsionKind::FromIdempotent { .. } => tp.is_torsion(&p) && in_gen(&p, &gen),
        };
        if ok {
            let names: Vec<&str> = s.iter().map(|&i| a.vertex_labels[i].as_str()).collect();
            return Ok((
                Verdict::proven(format!("T = Gen(P) for P the sum of the projectives at vertices {names:?}")),
                Some(s),
            ));
        }
    }
    Ok((
        Verdict::refuted(
            "T = Gen(P) for a finitely generated projective P",
            Witness::new("no sum of indecomposable projectives generates T"),
        ),
        None,
    ))
}

/// Structural flags of a TTF triple.
#[derive(Clone, Debug, Serialize)]
pub struct TtfClassification {
    pub faithful: bool,
    pub left_split: bool,
    pub ideal_torsionfree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub against: String,
    pub matches: bool,
}

/// The pipeline report for the TTF triple of an idempotent ideal.
#[derive(Clone, Debug, Serialize)]
pub struct TtfReport {
    pub theorem: String,
    pub classification: TtfClassification,
    pub verdicts: TtfVerdicts,
    pub progenerator: ComplexDims,
    pub end_ring: EndRingSummary,
    pub algebra_center_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TtfVerdicts {
    pub standard_conditions: ConditionReport,
    pub stalk: Verdict,
}

/// Classify, select a theorem, build the progenerator and compute its endomorphism ring.
pub fn ttf_report<K: Field>(tp: &TorsionPair<K>, cfg: CorpusConfig) -> Result<(TtfReport, Arc<Algebra<K>>)> {
    let a = &tp.algebra;
    let ideal = require_ttf(tp)?;
    let reg = FdModule::regular(a);
    let a_sub = ideal_submodule(a, ideal);
    let (am, _) = reg.sub_module(&a_sub);
    let classification = TtfClassification {
        faithful: tp.t_regular().is_zero(),
        left_split: is_summand(&reg, &a_sub),
        ideal_torsionfree: tp.is_torsionfree(&am),
    };
    let stalk = stalk_progenerator_check(tp, cfg.seed)?;
    let (theorem, g) = if classification.left_split {
        (LEFT_SPLIT, ttf_progenerator(tp)?)
    } else if let Some(g) = &stalk.complex {
        (STALK_SUM, g.clone())
    } else {
        (TTF_COMPLEX, ttf_progenerator(tp)?)
    };
    let standard = check_standard_conditions(&g, tp, cfg)?;
    let s = end_ring(&g, cfg.seed)?;
    let summary = EndRingSummary::of(&s.algebra)?;
    let cross_check = if classification.left_split {
        let rt = a.quotient(&submodule_ideal(a, tp.t_regular()))?;
        let ra = a.quotient(ideal)?;
        let prod = product_algebra(&rt, &ra)?;
        Some(CrossCheck {
            against: "R/t(R) × R/a".into(),
            matches: prod.invariants()?.matches(&s.algebra.invariants()?),
        })
    } else if theorem == STALK_SUM {
        stalk.cross_check.map(|m| CrossCheck { against: "triangular ring of Ext^1(R/a, a/t(a))".into(), matches: m })
    } else {
        None
    };
    let report = TtfReport {
        theorem: theorem.into(),
        classification,
        verdicts: TtfVerdicts { standard_conditions: standard, stalk: stalk.verdict },
        progenerator: g.dims(),
        end_ring: summary,
        algebra_center_dim: a.center_dim(),
        cross_check,
    };
    Ok((report, s.algebra))
}
