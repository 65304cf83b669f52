use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the mathematical domain of the function.
    #[error("domain error: {what} = {value} ({reason})")]
    Domain {
        what: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Malformed distribution, matrix, signal or file content.
    #[error("validation error: {0}")]
    Validation(String),

    /// An iterative solver ran out of iterations.
    #[error("did not converge after {iterations} iterations (last gap {gap:e})")]
    NotConverged { iterations: usize, gap: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A request would exceed a fixed tractability bound.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("codec error: {0}")]
    Codec(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            reason,
        }
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Validation(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Validation(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
