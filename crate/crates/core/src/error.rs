use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A computed quantity violated an identity that must hold for any
    /// correct implementation. Seeing this means there is a bug.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
