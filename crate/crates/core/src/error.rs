use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// The variants fall into three classes that the command line maps to exit
/// codes: malformed input, computations that leave the supported fragment,
/// and genuine verification failures (which are not errors but reports).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("entries of a super matrix must have a common form degree")]
    Inhomogeneous,
    #[error("outside the supported current fragment: {0}")]
    Fragment(String),
    #[error("restriction undecidable in fragment: {0}")]
    RestrictionUndecidable(String),
    #[error("lift-failed at level {level} (degree bound {bound})")]
    LiftFailed { level: usize, bound: u32 },
    #[error("{0} is not a minimal prime of the ideal")]
    NotMinimalPrime(String),
    #[error("non-monomial unsupported: {0}")]
    NonMonomial(String),
    #[error("ideal is the unit or zero ideal")]
    TrivialIdeal,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not Cohen-Macaulay-compatible: {0}")]
    NotCohenMacaulay(String),
    #[error("complex check failed at level {level}: {reason}")]
    NotAComplex { level: usize, reason: String },
    #[error("chain map identity fails at level {level}")]
    NotAChainMap { level: usize },
}

impl Error {
    /// True for errors caused by malformed input rather than by the math.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
