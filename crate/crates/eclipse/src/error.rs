use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid point {id}: {reason}")]
    InvalidPoint { id: u64, reason: String },

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("invalid ratio box: {0}")]
    InvalidRatioBox(String),

    #[error("points must be distinct, both have id {0}")]
    IdenticalIds(u64),

    #[error("degenerate pair ({0}, {1}): dual hyperplanes are parallel")]
    DegeneratePair(u64, u64),

    #[error("index too large: {u} skyline points exceeds guard {guard}; use the transform algorithm instead")]
    IndexTooLarge { u: usize, guard: usize },

    #[error("order vector index and intersection index were built from different data")]
    IndexMismatch,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
