use thiserror::Error;

/// Errors raised by the library.
///
/// Verification failures are not errors; they are reported as data
/// (see [`crate::experiments::InvariantReport`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A descent step would push the mass of `index` to zero.
    #[error("state {index} would be clamped to zero at this learning rate")]
    WouldClamp { index: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
