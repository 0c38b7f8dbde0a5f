//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Result`]. The variants
//! name the *condition* that was violated, so callers (in particular the CLI)
//! can map them to stable machine-readable kinds.

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A square class, diagonal entry, or symbol argument was zero
    /// (or a denominator was zero).
    #[error("zero input: {0}")]
    ZeroInput(&'static str),

    /// Base fields of characteristic 2 are not supported.
    #[error("fields of characteristic 2 are not supported")]
    CharTwo,

    /// A finite-field modulus was not an odd prime, or a finite place was
    /// indexed by a composite number.
    #[error("{0} is not an odd prime")]
    BadPrime(u64),

    /// A rational input could not be certified squarefree-factored within the
    /// trial-division bound.
    #[error("cannot certify the squarefree part of {value}: a cofactor exceeds bound {bound}^2")]
    FactorizationLimit { value: i128, bound: u64 },

    /// Two operands live over different base fields.
    #[error("base fields differ: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    /// A signature (or real-place datum) was requested over a field with no
    /// real embedding.
    #[error("no real place: the signature is not defined over {0}")]
    NoRealPlace(String),

    /// A construction required a nontrivial square class but received the
    /// class of 1.
    #[error("trivial square class: {0}")]
    TrivialClass(&'static str),

    /// A blow-up was requested with codimension < 1.
    #[error("bad codimension {0}: a blow-up center must have codimension >= 1")]
    BadCodim(u32),

    /// A series coefficient beyond the configured truncation order was
    /// requested.
    #[error("index {n} exceeds truncation order {order}")]
    TruncationExceeded { n: usize, order: usize },

    /// An enumeration would exceed the supported size bounds.
    #[error("size limit: {0}")]
    SizeLimit(String),

    /// Inversion of a power series whose constant term is not 1 in the
    /// Grothendieck–Witt ring.
    #[error("not a unit: the constant coefficient is not equal to 1")]
    NotAUnit,

    /// A numeric argument fell outside the domain of the operation.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// An expression could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable kind label for this error.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroInput(_) => "ZeroInput",
            Error::CharTwo => "CharTwo",
            Error::BadPrime(_) => "BadPrime",
            Error::FactorizationLimit { .. } => "FactorizationLimit",
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::NoRealPlace(_) => "NoRealPlace",
            Error::TrivialClass(_) => "TrivialClass",
            Error::BadCodim(_) => "BadCodim",
            Error::TruncationExceeded { .. } => "TruncationExceeded",
            Error::SizeLimit(_) => "SizeLimit",
            Error::NotAUnit => "NotAUnit",
            Error::OutOfRange(_) => "OutOfRange",
            Error::Parse(_) => "Parse",
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
