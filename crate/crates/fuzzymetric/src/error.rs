use thiserror::Error;

/// Errors raised by constructors, audits and the instance format.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain (wrong space, bad level, unknown id).
    #[error("domain error: {0}")]
    Domain(String),
    /// A level family that does not describe a fuzzy set (non-nested or empty cuts).
    #[error("representation error: {0}")]
    Representation(String),
    /// A staged procedure ran out of window members or centers.
    #[error("budget exhausted at stage {stage}: {reason}")]
    Budget { stage: usize, reason: String },
    /// Invalid generator or command parameters.
    #[error("config error: {0}")]
    Config(String),
    /// Malformed instance record.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
