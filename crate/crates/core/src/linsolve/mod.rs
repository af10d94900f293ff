//! The stationary HSS iteration for linear systems, plus the direct
//! factorization kernels it and the AVE solvers rely on.

mod factor;

pub use factor::{cholesky_factor, lu_factor, CholeskyFactor, LuFactor};

use std::time::Instant;

use crate::error::{AveError, Result};
use crate::problem::{SolveReport, SolveStatus, DIVERGENCE_RATIO};
use crate::scalar::{real_to_f64, Scalar};
use crate::sparse::SparseMatrix;
use crate::splitting::{factorize, split};
use crate::vector::Vector;

/// Options for standalone linear HSS solves.
#[derive(Debug, Clone)]
pub struct LinearIterOptions<T: Scalar> {
    /// Relative residual target.
    pub tol: f64,
    pub max_iter: usize,
    /// Keep the full residual history (otherwise only the last value).
    pub record_history: bool,
    /// Starting iterate; zero vector when absent.
    pub x0: Option<Vector<T>>,
}

impl<T: Scalar> Default for LinearIterOptions<T> {
    fn default() -> Self {
        LinearIterOptions {
            tol: 1e-10,
            max_iter: 500,
            record_history: false,
            x0: None,
        }
    }
}

impl<T: Scalar> LinearIterOptions<T> {
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(AveError::InvalidArgument(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(AveError::InvalidArgument(
                "max_iter must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Solves `A x = b` with the two-half-step HSS iteration:
/// `(alpha I + H) x' = (alpha I - S) x + b`, then
/// `(alpha I + S) x'' = (alpha I - H) x' + b`.
///
/// Unconditionally convergent for positive definite `A` (Hermitian part
/// positive definite) and any `alpha > 0`.
pub fn hss_linear_solve<T: Scalar>(
    a: &SparseMatrix<T>,
    b: &Vector<T>,
    alpha: f64,
    opts: &LinearIterOptions<T>,
) -> Result<SolveReport<T>> {
    opts.validate()?;
    if !a.is_square() {
        return Err(AveError::NotSquare {
            nrows: a.nrows(),
            ncols: a.ncols(),
        });
    }
    if a.nrows() != b.len() {
        return Err(AveError::DimensionMismatch(format!(
            "matrix is {}x{}, rhs has length {}",
            a.nrows(),
            a.ncols(),
            b.len()
        )));
    }
    if let Some(x0) = &opts.x0 {
        if x0.len() != b.len() {
            return Err(AveError::DimensionMismatch(format!(
                "x0 has length {}, expected {}",
                x0.len(),
                b.len()
            )));
        }
    }

    let start = Instant::now();
    let factors = match split(a).and_then(|sp| factorize(&sp, alpha)) {
        Ok(f) => f,
        Err(AveError::Factorization(_)) => {
            let x = opts.x0.clone().unwrap_or_else(|| Vector::zeros(b.len()));
            return Ok(SolveReport::factorization_failure(
                x,
                start.elapsed().as_secs_f64(),
            ));
        }
        Err(e) => return Err(e),
    };

    let n = b.len();
    let alpha_s = factors.alpha_scalar();
    let nb = real_to_f64(b.norm2());
    let denom = if nb > 0.0 { nb } else { 1.0 };

    let mut x = opts.x0.clone().unwrap_or_else(|| Vector::zeros(n));
    let mut history: Vec<f64> = Vec::new();

    let mut sx = vec![T::zero(); n];
    let status;
    let mut k = 0;
    loop {
        let ax = a.spmv(&x)?;
        let rho = real_to_f64(b.sub(&ax).norm2()) / denom;
        if !opts.record_history {
            history.clear();
        }
        history.push(rho);

        if rho <= opts.tol {
            status = SolveStatus::Converged;
            break;
        }
        if !rho.is_finite() || rho > DIVERGENCE_RATIO {
            status = SolveStatus::Diverged;
            break;
        }
        if k >= opts.max_iter {
            status = SolveStatus::MaxIterations;
            break;
        }

        // (alpha I + H) x_half = (alpha I - S) x + b
        factors.s().spmv_into(x.as_slice(), &mut sx);
        let mut rhs = Vector::zeros(n);
        for i in 0..n {
            rhs[i] = alpha_s * x[i] - sx[i] + b[i];
        }
        let x_half = factors.solve_hermitian_shift(&rhs)?;

        // (alpha I + S) x_next = (alpha I - H) x_half + b
        factors.h().spmv_into(x_half.as_slice(), &mut sx);
        for i in 0..n {
            rhs[i] = alpha_s * x_half[i] - sx[i] + b[i];
        }
        x = factors.solve_skew_shift(&rhs)?;
        k += 1;
    }

    Ok(SolveReport {
        x,
        status,
        outer_iterations: k,
        inner_iterations: Vec::new(),
        total_iterations: k,
        residual_history: history,
        wall_time: start.elapsed().as_secs_f64(),
    })
}
