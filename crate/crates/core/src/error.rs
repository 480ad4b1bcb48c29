use thiserror::Error;

/// Errors surfaced by the library. Resource refusals are kept distinct from
/// precondition failures so callers can map them to different exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid word length {0} (supported: 1..=64)")]
    InvalidLength(usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration of {needed} items refused (cap is {cap})")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("exact arithmetic produced a non-integral value: {0}")]
    NonIntegral(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(message: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(message.into()))
}

/// Default bound on loop iterations for exhaustive enumerations.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 26;

pub(crate) fn check_cap(needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        Err(Error::CapExceeded { needed, cap })
    } else {
        Ok(())
    }
}
