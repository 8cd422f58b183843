use thiserror::Error;

/// Failures raised by the engine. Identity mismatches are not errors; they are
/// reported through [`crate::report::IdentityReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("singular specialization: {0}")]
    Singular(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("shell bound exhausted: {0}")]
    ShellBound(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("unknown identity: {0}")]
    UnknownId(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
