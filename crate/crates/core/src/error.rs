use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
