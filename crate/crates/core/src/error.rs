use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("relation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("algebra is not finite-dimensional: {0}")]
    NotFiniteDimensional(String),
    #[error("characteristic {char} too small for an algebra of dimension {dim}")]
    CharTooSmall { char: u64, dim: usize },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("vertex {0} is not a source")]
    NotSource(String),
    #[error("quiver has an oriented cycle")]
    Cyclic,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
