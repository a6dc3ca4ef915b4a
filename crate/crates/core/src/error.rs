use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("model invariant violated ({invariant}): {detail}")]
    Invariant { invariant: &'static str, detail: String },
    #[error("vertex {0} is not mutable")]
    NotMutable(String),
    #[error("no Plücker exchange pattern at vertex {0}")]
    NotPlabicMutable(String),
    #[error("division is not exact in the Laurent ring")]
    NotLaurent,
    #[error("negative power of a non-monomial image for {0}")]
    NotInvertible(String),
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("level slice is unbounded")]
    Unbounded,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}

pub(crate) fn invariant<T>(invariant: &'static str, detail: impl Into<String>) -> Result<T> {
    Err(Error::Invariant { invariant, detail: detail.into() })
}
