use thiserror::Error;

/// Errors produced by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("rank deficiency: expected rank {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },

    #[error("eigenvalue iteration did not converge: {0}")]
    IterationLimit(String),

    #[error("unsupported polynomial kind: {0}")]
    UnsupportedKind(String),

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("degenerate polytope: {0}")]
    DegeneratePolytope(String),

    #[error("unsupported support: {0}")]
    UnsupportedSupport(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("inconclusive degree: numerical nullspace has dimension {0}, expected 1")]
    InconclusiveDegree(usize),

    #[error("coefficients are not generic: {0}")]
    Genericity(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("corrector failed: {0}")]
    CorrectorFailure(String),

    #[error("path tracking failed at s = {s}: {reason}")]
    PathFailure { s: f64, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
