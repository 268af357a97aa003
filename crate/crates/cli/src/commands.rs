//! Command bodies, generic over the scalar field.

use std::path::Path;
use std::sync::Arc;

use heartforge_core::algebra::{Algebra, QuiverPresentation};
use heartforge_core::heart::{
    check_standard_conditions, classical_1tilting_check, end_ring, hkm_check, stalk_progenerator_check,
    tilting_complex_check, ttf_report, EndRingSummary, StandardComplex, TwoTermComplex,
};
use heartforge_core::homological::min_presentation;
use heartforge_core::torsion::{pair_from_module, CorpusConfig, TorsionKind, TorsionPair};
use heartforge_core::trivext::build_from_quiver;
use heartforge_core::{Field, Status, Verdict};
use serde_json::{json, Value};

use crate::io::{load_algebra, load_differential, load_module, load_torsion};
use crate::{CliError, Outcome};

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn vertex_names<K: Field>(a: &Algebra<K>, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| a.vertex_labels[v].clone()).collect()
}

pub fn algebra_check<K: Field>(k: &K, pres: &QuiverPresentation, module: Option<&Path>) -> Result<Outcome, CliError> {
    let a = load_algebra(k, pres)?;
    let mut report = json!({
        "field": k.spec().to_string(),
        "vertices": a.vertex_labels,
        "invariants": to_value(&a.invariants()?),
    });
    if let Some(path) = module {
        let m = load_module(&a, path)?;
        report["module"] = json!({
            "dims": m.dims,
            "top": m.top_multiplicities()?,
            "socle": m.socle_multiplicities()?,
            "projective": m.is_projective()?,
        });
    }
    Ok(Outcome::new("algebra-check", report, None))
}

fn torsion_kind<K: Field>(tp: &TorsionPair<K>) -> Value {
    match &tp.kind {
        TorsionKind::FromIdempotent { e, .. } => json!({ "idempotent": vertex_names(&tp.algebra, e) }),
        TorsionKind::FromModule { v } => json!({ "generated_by": v.dims }),
    }
}

pub fn torsion<K: Field>(
    k: &K,
    pres: &QuiverPresentation,
    tpath: &Path,
    cfg: CorpusConfig,
) -> Result<Outcome, CliError> {
    let a = load_algebra(k, pres)?;
    let tp = load_torsion(&a, tpath)?;
    let axioms = match &tp.kind {
        TorsionKind::FromIdempotent { .. } => {
            Verdict::proven("T = {M : aM = 0} for an idempotent ideal a is a TTF class")
        }
        TorsionKind::FromModule { v } => pair_from_module(v, cfg)?.1,
    };
    let report = json!({
        "kind": torsion_kind(&tp),
        "axioms": to_value(&axioms),
        "t_regular_dims": tp.t_regular().dims(),
        "faithful": to_value(&tp.is_faithful()),
        "hereditary": to_value(&tp.is_hereditary(cfg)),
        "split": to_value(&tp.is_split(cfg)),
    });
    Ok(Outcome::new("torsion", report, Some(axioms.status)))
}

/// `0 → Ker(d) → P_1 → P_0`, the standard form of `V[0]` for the generator `V` of a torsion class.
fn generator_stalk<K: Field>(tp: &TorsionPair<K>) -> Result<StandardComplex<K>, CliError> {
    let pres = min_presentation(&tp.generator())?;
    Ok(StandardComplex::with_x(pres.d.clone(), &pres.d.kernel_sub())?)
}

pub fn heart_progenerator<K: Field>(
    k: &K,
    pres: &QuiverPresentation,
    tpath: &Path,
    cfg: CorpusConfig,
) -> Result<Outcome, CliError> {
    let a = load_algebra(k, pres)?;
    let tp = load_torsion(&a, tpath)?;
    if tp.is_idempotent_kind() {
        let (report, _) = ttf_report(&tp, cfg)?;
        let status = report.verdicts.standard_conditions.overall().status;
        return Ok(Outcome::new("heart-progenerator", to_value(&report), Some(status)));
    }
    let g = generator_stalk(&tp)?;
    let conditions = check_standard_conditions(&g, &tp, cfg)?;
    let status = conditions.overall().status;
    let report = json!({ "candidate": "V[0]", "progenerator": to_value(&g.dims()), "standard_conditions": to_value(&conditions) });
    Ok(Outcome::new("heart-progenerator", report, Some(status)))
}

pub fn heart_endring<K: Field>(
    k: &K,
    pres: &QuiverPresentation,
    tpath: &Path,
    cfg: CorpusConfig,
) -> Result<Outcome, CliError> {
    let a = load_algebra(k, pres)?;
    let tp = load_torsion(&a, tpath)?;
    let (summary, conditions, theorem) = if tp.is_idempotent_kind() {
        let (report, _) = ttf_report(&tp, cfg)?;
        (report.end_ring, report.verdicts.standard_conditions, report.theorem)
    } else {
        let g = generator_stalk(&tp)?;
        let conditions = check_standard_conditions(&g, &tp, cfg)?;
        (EndRingSummary::of(&end_ring(&g, cfg.seed)?.algebra)?, conditions, "V[0]".to_string())
    };
    let status = conditions.overall().status;
    let report = json!({
        "theorem": theorem,
        "progenerator": conditions.progenerator,
        "end_ring": to_value(&summary),
        "algebra_center_dim": a.center_dim(),
    });
    Ok(Outcome::new("heart-endring", report, Some(status)))
}

pub fn stalk_check<K: Field>(
    k: &K,
    pres: &QuiverPresentation,
    tpath: &Path,
    cfg: CorpusConfig,
) -> Result<Outcome, CliError> {
    let a = load_algebra(k, pres)?;
    let tp = load_torsion(&a, tpath)?;
    let summary = stalk_progenerator_check(&tp, cfg.seed)?.summary()?;
    let status = summary.verdict.status;
    Ok(Outcome::new("stalk-check", to_value(&summary), Some(status)))
}

pub fn hkm<K: Field>(
    k: &K,
    pres: &QuiverPresentation,
    tpath: &Path,
    cpath: &Path,
    cfg: CorpusConfig,
) -> Result<Outcome, CliError> {
    let a = load_algebra(k, pres)?;
    let tp = load_torsion(&a, tpath)?;
    let c = TwoTermComplex::new(load_differential(&a, cpath)?)?;
    let v = hkm_check(&c, &tp, cfg)?;
    let status = v.status;
    Ok(Outcome::new("hkm-check", to_value(&v), Some(status)))
}

pub fn tilt<K: Field>(
    k: &K,
    pres: &QuiverPresentation,
    module: Option<&Path>,
    complex: Option<(&Path, &Path)>,
    cfg: CorpusConfig,
) -> Result<Outcome, CliError> {
    let a: Arc<Algebra<K>> = load_algebra(k, pres)?;
    let v = match (module, complex) {
        (Some(m), None) => classical_1tilting_check(&load_module(&a, m)?, cfg.seed)?,
        (None, Some((cpath, tpath))) => {
            let tp = load_torsion(&a, tpath)?;
            let c = TwoTermComplex::new(load_differential(&a, cpath)?)?;
            tilting_complex_check(&c, &tp, cfg)?
        }
        _ => return Err(CliError::Usage("tilt-check needs either --module, or --complex with --torsion".into())),
    };
    let status = v.status;
    Ok(Outcome::new("tilt-check", to_value(&v), Some(status)))
}

pub fn trivext<K: Field>(
    k: &K,
    pres: &QuiverPresentation,
    source: &str,
    check: bool,
    cfg: CorpusConfig,
) -> Result<Outcome, CliError> {
    let i = pres
        .vertices
        .iter()
        .position(|v| v == source)
        .ok_or_else(|| CliError::Input(format!("unknown vertex {source}")))?;
    let rep = build_from_quiver(k, pres, i, check, cfg)?;
    let summary = rep.summary();
    let mut parts: Vec<Verdict> = summary.facts.clone();
    parts.extend(summary.heart_progen.conditions.iter().cloned());
    let mut status = Verdict::all(parts).status;
    if rep.tilting.is_proven() {
        status = Status::Refuted;
    }
    Ok(Outcome::new("trivext-build", to_value(&summary), Some(status)))
}
