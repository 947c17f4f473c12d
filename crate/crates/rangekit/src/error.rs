//! Library error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("time {t} outside the sampled domain [0, {horizon}]")]
    OutOfDomain { t: f64, horizon: f64 },

    #[error("path is not non-decreasing at knot {index}")]
    NotMonotone { index: usize },

    #[error("grids are not aligned: {0}")]
    GridMismatch(String),

    #[error("invalid process spec: {0}")]
    InvalidSpec(String),

    #[error("unknown bank function `{0}`")]
    UnknownFunction(String),

    #[error("unknown normalizer `{0}`")]
    UnknownNormalizer(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
