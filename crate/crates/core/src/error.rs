use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("polynomial must have degree >= 1")]
    ZeroDegree,

    #[error("root finder did not converge after {iterations} iterations (max residual {max_residual:e})")]
    NonConvergence {
        iterations: usize,
        residuals: Vec<f64>,
        max_residual: f64,
    },

    #[error("expected {expected} entries, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("similarity transform is singular (pivot {pivot:e} below threshold {threshold:e})")]
    SingularTransform { pivot: f64, threshold: f64 },

    #[error("eigenvalue moments disagree with the matrix: sum residual {sum_residual:e}, Q residual {q_residual:e}, tolerance {tolerance:e}")]
    MomentMismatch {
        sum_residual: f64,
        q_residual: f64,
        tolerance: f64,
    },

    #[error("only moments k = 1 and k = 2 are supported, got k = {0}")]
    UnsupportedMoment(u32),

    #[error("spectrum is inconsistent with the given moments: {0}")]
    InconsistentMoments(String),

    #[error("ellipse construction needs dimension >= 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("direction (0, 0) has no support value")]
    ZeroDirection,

    #[error("ensemble {kind} does not support n = {n}")]
    UnsupportedDimension { kind: &'static str, n: usize },
}
