use thiserror::Error;

use crate::parser::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0}: zero polynomial is not allowed here")]
    ZeroPolynomial(&'static str),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("reciprocal of the zero function")]
    ReciprocalOfZero,

    #[error("{0}: the rational function is constant")]
    ConstantFunction(&'static str),

    /// Certification failed at the given precision; retry with `next` bits.
    #[error("certification failed at {bits} bits; retry with {next} bits")]
    NeedPrecision { bits: u32, next: u32 },

    #[error("certification failed even at the precision cap of {cap} bits")]
    PrecisionExhausted { cap: u32 },

    #[error("precision must be at least 64 bits (got {0})")]
    PrecisionTooLow(u32),

    #[error("root factorization check failed: {0}")]
    Lemma1Failure(String),

    #[error("not applicable: {0}")]
    Inapplicable(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
