use thiserror::Error;

/// Errors raised by the quiver, representation and decomposition layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("zero vector has no minimum positive entry")]
    ZeroVector,

    #[error("{0} is not a positive root of this quiver")]
    NotARoot(String),

    #[error("representation mismatch: {0}")]
    RepMismatch(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partitioning morphism is not coassociative")]
    NotCoassociative,

    #[error("size bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
