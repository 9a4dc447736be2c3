use std::path::PathBuf;

use thiserror::Error;

use crate::perm::{ParseError, PermError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Perm(#[from] PermError),
    /// `point` is 1-based.
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("search budget of {budget} nodes exhausted after {nodes} nodes")]
    BudgetExhausted { budget: u64, nodes: u64 },
    #[error("generator {index} of the subgroup is not an element of the group")]
    NotSubgroup { index: usize },
    #[error("action would have degree {size}, above the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("{0}")]
    Invalid(String),
    #[error("{path}:{line}: {message}")]
    FileFormat {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("catalog entry `{name}` failed validation: {message}")]
    CatalogCorrupt { name: String, message: String },
    #[error("certificate schema version {found} is not supported (expected {expected})")]
    SchemaVersion { found: u32, expected: u32 },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
