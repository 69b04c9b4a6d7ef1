use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The request is well formed but exceeds what the chosen method can do.
    #[error("capability exceeded: {0}")]
    Capability(String),

    /// A measure definition violates the fuzzy-measure axioms.
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
