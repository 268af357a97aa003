//! Reading the JSON input files: algebras, modules, torsion-pair specs and two-term complexes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use heartforge_core::algebra::{build_algebra, Algebra, Coeff, QuiverPresentation};
use heartforge_core::modrep::ModuleJson;
use heartforge_core::torsion::TorsionPair;
use heartforge_core::{FdModule, Field, Mat, ModuleMap};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_presentation(path: &Path) -> Result<QuiverPresentation, CliError> {
    read(path)
}

pub fn load_algebra<K: Field>(k: &K, pres: &QuiverPresentation) -> Result<Arc<Algebra<K>>, CliError> {
    Ok(build_algebra(k, pres, None)?)
}

pub fn load_module<K: Field>(a: &Arc<Algebra<K>>, path: &Path) -> Result<FdModule<K>, CliError> {
    let j: ModuleJson = read(path)?;
    FdModule::from_json(a, &j).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// `{"idempotent": ["3"]}` or `{"generated_by": "module.json"}`; module paths are relative to the torsion file.
#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TorsionSpec {
    Idempotent(Vec<String>),
    GeneratedBy(PathBuf),
}

fn vertex<K: Field>(a: &Algebra<K>, name: &str) -> Result<usize, CliError> {
    a.vertex_index(name).ok_or_else(|| CliError::Input(format!("unknown vertex {name}")))
}

pub fn load_torsion<K: Field>(a: &Arc<Algebra<K>>, path: &Path) -> Result<TorsionPair<K>, CliError> {
    match read::<TorsionSpec>(path)? {
        TorsionSpec::Idempotent(names) => {
            let e = names.iter().map(|n| vertex(a, n)).collect::<Result<Vec<_>, _>>()?;
            Ok(TorsionPair::ttf_from_idempotent(a, &e)?)
        }
        TorsionSpec::GeneratedBy(rel) => {
            let base = path.parent().unwrap_or(Path::new("."));
            Ok(TorsionPair::generated_by(&load_module(a, &base.join(rel))?))
        }
    }
}

/// `{"q": module, "p": module, "d": {"vertex": rows}}`; row `r` of the block at a vertex is the image of basis vector `r`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub q: ModuleJson,
    pub p: ModuleJson,
    #[serde(default)]
    pub d: BTreeMap<String, Vec<Vec<Coeff>>>,
}

pub fn load_differential<K: Field>(a: &Arc<Algebra<K>>, path: &Path) -> Result<ModuleMap<K>, CliError> {
    let j: ComplexJson = read(path)?;
    let bad = |m: String| CliError::Input(format!("{}: {m}", path.display()));
    let q = FdModule::from_json(a, &j.q).map_err(|e| bad(format!("q: {e}")))?;
    let p = FdModule::from_json(a, &j.p).map_err(|e| bad(format!("p: {e}")))?;
    let k = &a.field;
    let mut blocks: Vec<Mat<K>> = (0..a.n_vertices()).map(|i| Mat::zeros(k, q.dims[i], p.dims[i])).collect();
    for (name, rows) in &j.d {
        let i = vertex(a, name)?;
        if rows.len() != q.dims[i] || rows.iter().any(|r| r.len() != p.dims[i]) {
            return Err(bad(format!("d at vertex {name} needs a {}x{} matrix", q.dims[i], p.dims[i])));
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                blocks[i].set(r, c, k.parse(&x.as_text()).map_err(|e| bad(e.to_string()))?);
            }
        }
    }
    let d = ModuleMap { source: q, target: p, blocks };
    if !d.is_valid() {
        return Err(bad("d is not a module homomorphism".into()));
    }
    Ok(d)
}
