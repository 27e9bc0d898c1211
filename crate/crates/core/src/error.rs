use thiserror::Error;

/// Errors raised by the character, series, decomposition and oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("incompatible operands: {0}")]
    IncompatibleOperands(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    /// An exactness or integrality postcondition failed; this signals a bug upstream.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid_arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
