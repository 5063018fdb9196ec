use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<i64>),

    #[error("dominance order is only defined between partitions of equal size ({0} vs {1})")]
    DominanceSizeMismatch(u32, u32),

    #[error("negative concatenation power {0}")]
    NegativePower(i64),

    #[error("integrality violation: {0}")]
    Integrality(String),

    #[error("series truncation mismatch: {0}")]
    TruncationMismatch(String),

    #[error("insufficient series order: need {needed}, have {have}")]
    InsufficientOrder { needed: usize, have: usize },

    #[error("unsupported series shape: {0}")]
    UnsupportedSeries(String),

    #[error("element is not of homogeneous form: {0}")]
    NotHomogeneous(String),

    #[error("invalid curve germ: {0}")]
    InvalidGerm(String),

    #[error("branches cannot be separated at the given truncation: {0}")]
    Inseparable(String),

    #[error("blowup not applicable: {0}")]
    BlowupPrecondition(String),

    #[error("unsupported curve kind: {0}")]
    UnsupportedKind(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("invalid request at {path}: {message}")]
    Validation { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
