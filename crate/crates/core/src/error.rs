use thiserror::Error;

/// Errors raised by the library. Every fallible operation reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("numeric failure: {0}")]
    NumericFailure(String),
    #[error("undefined conditional probability: {0}")]
    UndefinedConditional(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
