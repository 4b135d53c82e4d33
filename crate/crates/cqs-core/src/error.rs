use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Validation` means the caller handed us data outside an operation's
/// domain. `Precondition` means structurally valid data that a specific
/// operation rejects (e.g. a chain that is not a T-chain). `Structural`
/// signals a malformed verification input discovered mid-computation.
/// `Internal` is reserved for consistency cross-checks that can only fail
/// on a library bug; callers should treat it as fatal.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("validation: {0}")]
    Validation(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("structural: {0}")]
    Structural(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
