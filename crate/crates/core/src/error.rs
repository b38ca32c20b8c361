use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("backend mismatch: cannot combine {left} and {right} scalars")]
    BackendMismatch {
        left: &'static str,
        right: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("denominator parameter #{index} collides with 1, q^-1, ..., q^-(n-1)")]
    DenominatorCollision { index: usize },

    #[error("Laurent polynomial is not symmetric under z -> 1/z")]
    NotSymmetric,

    #[error("coefficient at weight {weight:?} lies off the collapse direction")]
    Collapse { weight: Vec<i64> },

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("q-difference operator left a non-polynomial remainder (max |coeff| = {max_remainder:e})")]
    Consistency { max_remainder: f64 },

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("measure hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("quadrature did not converge after {points} points (relative change {change:e})")]
    QuadratureNonConvergence { points: usize, change: f64 },

    #[error("vector is not a highest weight vector")]
    NotHighestWeight,

    #[error("normalization failed: {0}")]
    Normalization(String),

    #[error("representation dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
