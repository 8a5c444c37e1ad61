use thiserror::Error;

/// Errors raised by estimation, resampling and I/O routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,

    #[error("non-finite value {value} at position {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("empty candidate set at grid point {index} (x = {x})")]
    EmptyCandidates { index: usize, x: f64 },

    #[error("index-space mismatch: {0}")]
    ShapeMismatch(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("sample size {n} too small (need at least {min})")]
    SampleTooSmall { n: usize, min: usize },

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("{path}, line {line}: {message}")]
    Parse {
        path: String,
        line: u64,
        message: String,
    },

    #[error("serialization failed: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
