//! The absolute value equation `A x - |x| = b` and the solve report shared by
//! all iterative methods.

use serde::{Deserialize, Serialize};

use crate::error::{AveError, Result};
use crate::scalar::{real_to_f64, Scalar};
use crate::sparse::SparseMatrix;
use crate::vector::Vector;

/// Relative residual beyond which an iteration is declared divergent.
pub const DIVERGENCE_RATIO: f64 = 1e10;

/// Residual tolerance a claimed exact solution must satisfy at construction,
/// relative to `max(1, ||b||)`.
pub const EXACT_SOLUTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct AveProblem<T: Scalar> {
    a: SparseMatrix<T>,
    b: Vector<T>,
    exact: Option<Vector<T>>,
}

impl<T: Scalar> AveProblem<T> {
    pub fn new(a: SparseMatrix<T>, b: Vector<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(AveError::NotSquare {
                nrows: a.nrows(),
                ncols: a.ncols(),
            });
        }
        if a.nrows() != b.len() {
            return Err(AveError::DimensionMismatch(format!(
                "matrix is {}x{} but the right-hand side has length {}",
                a.nrows(),
                a.ncols(),
                b.len()
            )));
        }
        Ok(AveProblem { a, b, exact: None })
    }

    /// Attaches a known exact solution, verifying it actually solves the
    /// equation to `EXACT_SOLUTION_TOL * max(1, ||b||)`.
    pub fn with_exact(a: SparseMatrix<T>, b: Vector<T>, exact: Vector<T>) -> Result<Self> {
        let mut problem = Self::new(a, b)?;
        if exact.len() != problem.b.len() {
            return Err(AveError::DimensionMismatch(format!(
                "exact solution has length {}, expected {}",
                exact.len(),
                problem.b.len()
            )));
        }
        let (r, _) = problem.ave_residual(&exact)?;
        let abs_res = real_to_f64(r.norm2());
        let scale = real_to_f64(problem.b.norm2()).max(1.0);
        if !(abs_res <= EXACT_SOLUTION_TOL * scale) {
            return Err(AveError::InconsistentExact {
                residual: abs_res / scale,
                tol: EXACT_SOLUTION_TOL,
            });
        }
        problem.exact = Some(exact);
        Ok(problem)
    }

    pub fn matrix(&self) -> &SparseMatrix<T> {
        &self.a
    }

    pub fn rhs(&self) -> &Vector<T> {
        &self.b
    }

    pub fn exact(&self) -> Option<&Vector<T>> {
        self.exact.as_ref()
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// Residual `r = A x - |x| - b` and its relative norm
    /// `||r|| / ||b||` (absolute norm when `||b|| = 0`).
    pub fn ave_residual(&self, x: &Vector<T>) -> Result<(Vector<T>, f64)> {
        if x.len() != self.n() {
            return Err(AveError::DimensionMismatch(format!(
                "iterate has length {}, expected {}",
                x.len(),
                self.n()
            )));
        }
        let ax = self.a.spmv(x)?;
        let absx = x.abs();
        let r = ax.sub(&absx).sub(&self.b);
        let nb = real_to_f64(self.b.norm2());
        let nr = real_to_f64(r.norm2());
        let rho = if nb > 0.0 { nr / nb } else { nr };
        Ok((r, rho))
    }
}

/// Termination state of an iterative solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    Converged,
    MaxIterations,
    Diverged,
    FactorizationFailure,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Converged => "Converged",
            SolveStatus::MaxIterations => "MaxIterations",
            SolveStatus::Diverged => "Diverged",
            SolveStatus::FactorizationFailure => "FactorizationFailure",
        }
    }
}

/// Outcome of an iterative solve.
///
/// `residual_history` holds relative residuals (the quantity the stopping
/// test uses). For inner-outer methods `inner_iterations` lists the inner
/// sweep count of each outer step and `total_iterations` is their sum; for
/// monolayer methods it is empty and `total_iterations` equals
/// `outer_iterations`.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: serde::Serialize"))]
pub struct SolveReport<T: Scalar> {
    pub x: Vector<T>,
    pub status: SolveStatus,
    pub outer_iterations: usize,
    pub inner_iterations: Vec<usize>,
    pub total_iterations: usize,
    pub residual_history: Vec<f64>,
    /// Seconds spent in factorization plus iteration.
    pub wall_time: f64,
}

impl<T: Scalar> SolveReport<T> {
    pub fn final_residual(&self) -> Option<f64> {
        self.residual_history.last().copied()
    }

    pub fn converged(&self) -> bool {
        self.status == SolveStatus::Converged
    }

    pub(crate) fn factorization_failure(x: Vector<T>, wall_time: f64) -> Self {
        SolveReport {
            x,
            status: SolveStatus::FactorizationFailure,
            outer_iterations: 0,
            inner_iterations: Vec::new(),
            total_iterations: 0,
            residual_history: Vec::new(),
            wall_time,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_problem(a: f64, b: f64) -> AveProblem<f64> {
        AveProblem::new(
            SparseMatrix::from_dense(&[vec![a]]).unwrap(),
            Vector::new(vec![b]),
        )
        .unwrap()
    }

    #[test]
    fn residual_zero_at_solution() {
        // 2*1 - |1| - 1 = 0
        let p = scalar_problem(2.0, 1.0);
        let (r, rho) = p.ave_residual(&Vector::new(vec![1.0])).unwrap();
        assert_eq!(r.as_slice(), &[0.0]);
        assert_eq!(rho, 0.0);
    }

    #[test]
    fn residual_at_zero_iterate() {
        let p = scalar_problem(2.0, 1.0);
        let (r, rho) = p.ave_residual(&Vector::new(vec![0.0])).unwrap();
        assert_eq!(r.as_slice(), &[-1.0]);
        assert_eq!(rho, 1.0);
    }

    #[test]
    fn zero_rhs_uses_absolute_residual() {
        let p = scalar_problem(2.0, 0.0);
        let (_, rho) = p.ave_residual(&Vector::new(vec![3.0])).unwrap();
        assert_eq!(rho, 3.0);
    }

    #[test]
    fn exact_solution_is_validated() {
        let a = SparseMatrix::from_dense(&[vec![2.0]]).unwrap();
        assert!(
            AveProblem::with_exact(a.clone(), Vector::new(vec![1.0]), Vector::new(vec![1.0]))
                .is_ok()
        );
        let err =
            AveProblem::with_exact(a, Vector::new(vec![1.0]), Vector::new(vec![2.0])).unwrap_err();
        assert!(matches!(err, AveError::InconsistentExact { .. }));
    }

    #[test]
    fn rectangular_matrix_rejected() {
        let a = SparseMatrix::<f64>::from_triplets(2, 3, &[(0, 0, 1.0)]).unwrap();
        assert!(matches!(
            AveProblem::new(a, Vector::zeros(2)),
            Err(AveError::NotSquare { .. })
        ));
    }
}
