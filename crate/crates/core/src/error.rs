use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inputs do not live on the same space, grid, or are structurally malformed.
    #[error("domain error: {0}")]
    Domain(String),

    /// A construction was asked to act on an object that fails its defining predicate.
    #[error("rejected input: {0}")]
    Rejected(String),

    #[error("enumeration exceeded the cap of {cap} candidate states")]
    CapExceeded { cap: u64 },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
