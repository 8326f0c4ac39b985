use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("operation needs a field, not {0}")]
    NotAField(String),

    #[error("spinor has parity {found}, expected {expected}")]
    ParityMismatch { expected: &'static str, found: &'static str },

    #[error("translator is not invertible (q(v) = 0)")]
    NonInvertibleTranslator,

    #[error("sampling degenerate: quadric space has dimension {0}, expected 10")]
    SamplingDegenerate(usize),

    #[error("Clifford and interpolated quadric spans differ (sign convention error)")]
    SpanMismatch,

    #[error("not a Mukai section: quadratic relation space has dimension {0}")]
    NotAMukaiSection(usize),

    #[error("field too large for exhaustive enumeration: {0}")]
    FieldTooLarge(String),

    #[error("inconsistent invariants: {0}")]
    InconsistentInvariants(String),

    #[error("wrong rank: expected {expected}, got {found}")]
    WrongRank { expected: String, found: usize },

    #[error("no form found with the requested invariants within the search bound")]
    SearchExhausted,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("corrupted system: {0}")]
    Corrupted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
