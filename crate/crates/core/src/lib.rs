//! Exact engine for torsion-pair hearts over finite-dimensional algebras.

pub mod algebra;
pub mod decomp;
pub mod error;
pub mod examples;
pub mod field;
pub mod heart;
pub mod homological;
pub mod linalg;
pub mod modrep;
pub mod poly;
pub mod torsion;
pub mod trivext;
pub mod verdict;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Fp, Rationals};
pub use linalg::{Mat, Subspace};
pub use modrep::{FdModule, ModuleMap, Submodule};
pub use verdict::{Status, Verdict, Witness};
