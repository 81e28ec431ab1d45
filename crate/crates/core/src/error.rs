use thiserror::Error;

/// Errors raised by the library.
///
/// `Consistency` is reserved for identities that hold by construction; seeing
/// one means an arithmetic bug, not bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("generators must be nonempty with gcd 1 (got {0:?})")]
    BadGenerators(Vec<u64>),

    #[error("sequence {0:?} is not telescopic")]
    NotTelescopic(Vec<u64>),

    #[error("{what} is out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("division by zero in finite field")]
    ZeroDivision,

    #[error("function {function} has a pole at {point}")]
    Pole { function: String, point: String },

    #[error("evaluating {function} at {point} needs local resolution (0/0)")]
    NeedsLocalResolution { function: String, point: String },

    #[error("instance too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
