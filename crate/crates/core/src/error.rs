use thiserror::Error;

/// Errors shared by all modules of the toolkit.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("matrix dimension {dim} exceeds the configured cap {max}")]
    DimensionOverflow { dim: usize, max: usize },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("matrix is not symmetric: |M[{i}][{j}] - M[{j}][{i}]| = {delta:e} exceeds tolerance {tol:e}")]
    NotSymmetric {
        i: usize,
        j: usize,
        delta: f64,
        tol: f64,
    },

    #[error(
        "eigensolver did not converge after {rotations} rotations (off-diagonal norm {off:e})"
    )]
    NoConvergence { rotations: usize, off: f64 },

    #[error("spectrum is not positive semidefinite: eigenvalue {value:e} is below -{tol:e}")]
    NotPsd { value: f64, tol: f64 },

    #[error("truncation depth {required} exceeds the cap {cap} (thermal factor too close to 1)")]
    TruncationOverflow { required: usize, cap: usize },

    #[error("root finder did not converge after {0} iterations")]
    RootNoConvergence(usize),

    #[error("no solution exists: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}
