//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("product is not a polynomial: cyclotomic factor Phi_{0} has negative exponent {1}")]
    NotAPolynomial(u64, i64),

    #[error("non-cyclotomic residue of degree {0} after trial division")]
    NonCyclotomicResidue(u64),

    #[error("denominator vanishes at zero")]
    DenominatorVanishesAtZero,

    #[error("invalid curve: {}", .0.join("; "))]
    InvalidCurve(Vec<String>),

    #[error("global Alexander polynomial required but not supplied")]
    MissingGlobalAlexander,

    #[error("division is not exact: {0}")]
    NonExactDivision(String),

    #[error("unsupported local data at point {point}: {reason}")]
    UnsupportedLocalData { point: usize, reason: String },

    #[error("point {0} carries no spectrum")]
    MissingSpectrum(usize),

    #[error("curve is not rational cuspidal")]
    NotRationalCuspidal,

    #[error("rho is undefined for degree 3")]
    DegreeThree,

    #[error("local zeta function at point {0} has a pole at -3/d")]
    LocalPoleAtMinus3OverD(usize),

    #[error("pole {0} lies outside the candidate set")]
    CandidateSetViolation(String),

    #[error("intersection matrix is not negative definite (minor {0})")]
    NotNegativeDefinite(usize),

    #[error("singular intersection matrix")]
    SingularMatrix,

    #[error("degree mismatch: expected {expected}, got {actual}")]
    DegreeMismatch { expected: i64, actual: i64 },

    #[error("series tail does not cancel: nonzero coefficient at exponent {0}")]
    TailNotCancelled(u64),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("independent routes disagree: {0}")]
    RouteDisagreement(String),

    #[error("unknown export format {0:?}")]
    UnknownFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
