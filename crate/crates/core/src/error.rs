use thiserror::Error;

/// Errors shared by the word, field and catalog layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("word size {0} is not supported; expected 8, 16, 32 or 64")]
    InvalidWordSize(u32),

    #[error("word value {value:#x} does not fit in {bits} bits")]
    WordOverflow { value: u64, bits: usize },

    #[error("word vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("word size mismatch: {left}-bit vs {right}-bit")]
    WordSizeMismatch { left: usize, right: usize },

    #[error("bit index {index} out of range for a {capacity}-bit vector")]
    BitIndexOutOfRange { index: usize, capacity: usize },

    #[error("invalid hex string {input:?}: {reason}")]
    InvalidHex { input: String, reason: String },

    #[error("value does not fit the target field element")]
    ValueOutOfRange,

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("input degree {degree} exceeds the reduction bound {bound}")]
    DegreeTooLarge { degree: isize, bound: usize },

    #[error("zero has no multiplicative inverse")]
    NotInvertible,

    #[error("division by zero")]
    DivisionByZero,

    #[error("inversion did not terminate; the modulus is not irreducible (or not prime)")]
    ReducibleModulus,

    #[error("no {family} field of size {size} in the catalog")]
    UnknownField { family: &'static str, size: usize },

    #[error("malformed field spec {input:?}: {reason} (expected \"t:e_k,...,e_0\")")]
    PolySpecParse { input: String, reason: String },

    #[error("field spec {input:?} violates constraint `{constraint}`: {detail}")]
    PolySpecInvalid {
        input: String,
        constraint: &'static str,
        detail: String,
    },

    #[error("invalid field parameters: {0}")]
    InvalidParams(String),

    #[error("invalid benchmark configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot format an empty report")]
    EmptyReport,
}

pub type Result<T> = std::result::Result<T, Error>;
