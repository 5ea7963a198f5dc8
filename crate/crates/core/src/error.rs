use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed input document.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    /// A configured size cap would be exceeded.
    #[error("resource guard: {what} is {actual}, cap is {cap}")]
    ResourceGuard {
        what: &'static str,
        actual: usize,
        cap: usize,
    },
    /// A table-backed worth function is not determined by the component partition.
    #[error("inconsistent worth table: {0}")]
    Inconsistent(String),
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

pub type Result<T, E = Error> = std::result::Result<T, E>;
