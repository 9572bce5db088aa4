use thiserror::Error;

/// Errors raised by the verification engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial is not divisible; remainder {remainder}")]
    Indivisible { remainder: String },

    #[error("total degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("ratio is not constant: {0}")]
    NotConstant(String),

    #[error("value {0} is not a root of unity")]
    NotRootOfUnity(String),

    #[error("fixed locus is not finite: {0}")]
    InfiniteFixedLocus(String),

    #[error("{numerator} is not divisible by {divisor}")]
    NotDivisible { numerator: i64, divisor: i64 },

    #[error("non-integral value: {0}")]
    NonIntegral(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
