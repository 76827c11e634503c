//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Root counting or certification on the identically-zero polynomial.
    #[error("degenerate polynomial")]
    DegeneratePolynomial,

    /// Harmonic numbers are defined for n >= 1.
    #[error("n must be positive")]
    NMustBePositive,

    /// Polygamma evaluation left of the pole at 0.
    #[error("pole/branch region: x = {x} is not positive")]
    PoleBranch { x: String },

    /// The configured asymptotic series cannot reach the requested accuracy.
    #[error("insufficient precision budget: {0}")]
    InsufficientPrecision(String),

    /// (x, a) outside the approximant's domain, or a non-positive log argument.
    #[error("outside (x,a) domain: {0}")]
    OutsideDomain(String),

    /// A sign-change bracket could not be established or refined.
    #[error("root bracketing failed: {0}")]
    RootBracketingFailed(String),

    /// Parameter falls in a regime no theorem covers.
    #[error("no theorem covers this regime: a = {a}")]
    NoTheoremCovers { a: String },

    /// Sequence evaluated below its minimum index.
    #[error("sequence {seq} requires n >= {min}, got {n}")]
    SequenceMinN { seq: String, min: u64, n: u64 },

    /// Order estimation with an error that is zero at working precision.
    #[error("sequence error unresolvable at working precision: {0}")]
    UnresolvableError(String),

    /// Scaled-limit check would be dominated by cancellation noise.
    #[error("increase precision or decrease n: {0}")]
    PrecisionGuard(String),

    /// Precision context outside its invariants.
    #[error("invalid precision context: {0}")]
    InvalidPrecision(String),

    /// Malformed input (CLI values, constants-file records, claim filters).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
