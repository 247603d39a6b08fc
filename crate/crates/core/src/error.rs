use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("Jacobi eigensolver did not converge: off-diagonal norm {off_norm:e} after {sweeps} sweeps")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not positive definite (pivot {pivot:e} at index {index})")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("Hermite degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("problem too large for exhaustive evaluation: {0}")]
    TooLarge(String),

    #[error("shape boundary signatures do not match: {0}")]
    SignatureMismatch(String),

    #[error("Gram matrix AA* is singular")]
    SingularGram,

    #[error("B = AA* - W is not positive definite")]
    BNotPositiveDefinite,

    #[error("matrix is rank deficient: rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
