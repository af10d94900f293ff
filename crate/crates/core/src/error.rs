//! Error types shared across the crate.

use crate::tuning::AlphaRun;

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, AveError>;

/// Failure of a direct factorization kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorizationError {
    /// A Cholesky pivot fell below the breakdown threshold: the (shifted)
    /// Hermitian part is not positive definite.
    #[error("Cholesky breakdown at pivot {index}: matrix is not positive definite")]
    CholeskyBreakdown { index: usize },
    /// LU elimination hit a pivot column that is numerically zero.
    #[error("singular matrix: no usable pivot at elimination step {index}")]
    Singular { index: usize },
}

#[derive(Debug, thiserror::Error)]
pub enum AveError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must be square, got {nrows}x{ncols}")]
    NotSquare { nrows: usize, ncols: usize },

    #[error("entry ({row}, {col}) is out of bounds for a {nrows}x{ncols} matrix")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        nrows: usize,
        ncols: usize,
    },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error(transparent)]
    Factorization(#[from] FactorizationError),

    /// The claimed exact solution does not satisfy the equation.
    #[error("claimed exact solution has relative residual {residual:.3e} (allowed {tol:.3e})")]
    InconsistentExact { residual: f64, tol: f64 },

    #[error("problem size n = {n} exceeds the sign-enumeration limit {limit}")]
    OracleLimit { n: usize, limit: usize },

    /// No grid point converged during parameter tuning; the per-alpha table
    /// is carried so callers can still report it.
    #[error("no alpha in the tuning grid converged")]
    NoConvergentAlpha { per_alpha: Vec<AlphaRun> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl AveError {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        AveError::Parse {
            line,
            msg: msg.into(),
        }
    }
}
