//! The convection-diffusion test family.
//!
//! Central differences on the unit square with an m x m interior grid give
//! the n x n matrix (n = m^2)
//!
//! ```text
//! A = Tx (x) I_m  +  I_m (x) Ty  +  p I_n
//! ```
//!
//! with `Tx = tridiag(t2, 4, t3)`, `Ty = tridiag(t2, 0, t3)`,
//! `t2 = -1 - Re`, `t3 = -1 + Re` and mesh Reynolds number
//! `Re = q h / 2`, `h = 1/(m+1)`. The synthetic right-hand side makes the
//! alternating imaginary vector the known exact solution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{AveError, Result};
use crate::problem::AveProblem;
use crate::sparse::SparseMatrix;
use crate::vector::Vector;

/// Parameters of the convection-diffusion test matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvDiffSpec {
    /// Interior grid points per dimension; the matrix has order m^2.
    pub m: usize,
    /// Convection magnitude (nonnegative).
    pub q: f64,
    /// Diagonal shift.
    pub p: f64,
}

impl ConvDiffSpec {
    pub fn new(m: usize, q: f64, p: f64) -> Result<Self> {
        if m == 0 {
            return Err(AveError::InvalidArgument("grid size m must be >= 1".into()));
        }
        if !(q >= 0.0) || !q.is_finite() || !p.is_finite() {
            return Err(AveError::InvalidArgument(format!(
                "invalid convection/shift parameters q = {q}, p = {p}"
            )));
        }
        Ok(ConvDiffSpec { m, q, p })
    }

    pub fn n(&self) -> usize {
        self.m * self.m
    }

    /// Grid spacing `h = 1/(m+1)`.
    pub fn spacing(&self) -> f64 {
        1.0 / (self.m as f64 + 1.0)
    }

    /// Mesh Reynolds number `q h / 2`.
    pub fn reynolds(&self) -> f64 {
        self.q * self.spacing() / 2.0
    }
}

/// Assembles the test matrix in CSR form (at most five entries per row,
/// diagonal `4 + p`).
pub fn build_matrix(spec: &ConvDiffSpec) -> SparseMatrix<f64> {
    let m = spec.m;
    let n = spec.n();
    let re = spec.reynolds();
    let t1 = 4.0;
    let t2 = -1.0 - re;
    let t3 = -1.0 + re;

    let mut triplets = Vec::with_capacity(5 * n);
    for block in 0..m {
        for inner in 0..m {
            let row = block * m + inner;
            triplets.push((row, row, t1 + spec.p));
            if block > 0 {
                triplets.push((row, row - m, t2)); // Tx sub-diagonal
            }
            if block + 1 < m {
                triplets.push((row, row + m, t3)); // Tx super-diagonal
            }
            if inner > 0 {
                triplets.push((row, row - 1, t2)); // Ty sub-diagonal
            }
            if inner + 1 < m {
                triplets.push((row, row + 1, t3)); // Ty super-diagonal
            }
        }
    }
    SparseMatrix::from_triplets(n, n, &triplets).expect("stencil indices are in range")
}

/// The prescribed exact solution: entries alternate -i, +i, -i, ...
/// (1-based index k carries (-1)^k i).
pub fn exact_solution(n: usize) -> Vector<Complex64> {
    Vector::new(
        (1..=n)
            .map(|k| {
                if k % 2 == 0 {
                    Complex64::new(0.0, 1.0)
                } else {
                    Complex64::new(0.0, -1.0)
                }
            })
            .collect(),
    )
}

/// Builds the complex AVE problem: `A` promoted to the complex field,
/// `b = A x* - |x*|`, with `x*` attached as the known exact solution.
pub fn build_problem(spec: &ConvDiffSpec) -> Result<AveProblem<Complex64>> {
    let a = build_matrix(spec).to_complex();
    let xstar = exact_solution(spec.n());
    let b = a.spmv(&xstar)?.sub(&xstar.abs());
    AveProblem::with_exact(a, b, xstar)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dense Kronecker-product assembly used as the independent oracle.
    fn dense_oracle(spec: &ConvDiffSpec) -> Vec<Vec<f64>> {
        let m = spec.m;
        let n = spec.n();
        let re = spec.reynolds();
        let (t1, t2, t3) = (4.0, -1.0 - re, -1.0 + re);
        let tri = |diag: f64| -> Vec<Vec<f64>> {
            let mut t = vec![vec![0.0; m]; m];
            for i in 0..m {
                t[i][i] = diag;
                if i > 0 {
                    t[i][i - 1] = t2;
                }
                if i + 1 < m {
                    t[i][i + 1] = t3;
                }
            }
            t
        };
        let tx = tri(t1);
        let ty = tri(0.0);
        let mut a = vec![vec![0.0; n]; n];
        for i1 in 0..m {
            for i2 in 0..m {
                for j1 in 0..m {
                    for j2 in 0..m {
                        let mut v = 0.0;
                        if i2 == j2 {
                            v += tx[i1][j1];
                        }
                        if i1 == j1 {
                            v += ty[i2][j2];
                        }
                        if i1 == j1 && i2 == j2 {
                            v += spec.p;
                        }
                        a[i1 * m + i2][j1 * m + j2] = v;
                    }
                }
            }
        }
        a
    }

    fn assert_matches_oracle(spec: &ConvDiffSpec) {
        let a = build_matrix(spec);
        let dense = dense_oracle(spec);
        for i in 0..spec.n() {
            for j in 0..spec.n() {
                assert_eq!(a.get(i, j), dense[i][j], "mismatch at ({i}, {j})");
            }
        }
    }

    #[test]
    fn two_by_two_grid_matches_kronecker_oracle() {
        let spec = ConvDiffSpec::new(2, 0.0, 0.0).unwrap();
        assert_matches_oracle(&spec);
        let a = build_matrix(&spec);
        let expected = [
            [4.0, -1.0, -1.0, 0.0],
            [-1.0, 4.0, 0.0, -1.0],
            [-1.0, 0.0, 4.0, -1.0],
            [0.0, -1.0, -1.0, 4.0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(a.get(i, j), expected[i][j]);
            }
        }
    }

    #[test]
    fn one_point_grid_is_scalar() {
        let spec = ConvDiffSpec::new(1, 0.0, 0.5).unwrap();
        let a = build_matrix(&spec);
        assert_eq!(a.nrows(), 1);
        assert_eq!(a.get(0, 0), 4.5);
    }

    #[test]
    fn unit_reynolds_zeroes_the_upper_offdiagonals() {
        // m = 2, q = 6: h = 1/3, Re = 1, so t2 = -2 and t3 = 0
        let spec = ConvDiffSpec::new(2, 6.0, 0.0).unwrap();
        assert_eq!(spec.reynolds(), 1.0);
        assert_matches_oracle(&spec);
        let a = build_matrix(&spec);
        assert_eq!(a.get(1, 0), -2.0);
        assert_eq!(a.get(0, 1), 0.0);
    }

    #[test]
    fn stencil_count_matches_formula() {
        for (m, q) in [(1usize, 0.0), (2, 0.0), (5, 1.0), (10, 0.0), (10, 100.0)] {
            let spec = ConvDiffSpec::new(m, q, 0.0).unwrap();
            let a = build_matrix(&spec);
            assert_eq!(a.nnz(), 5 * spec.n() - 4 * m, "m = {m}, q = {q}");
        }
    }

    #[test]
    fn exact_solution_alternates_starting_negative() {
        let x = exact_solution(2);
        assert_eq!(x[0], Complex64::new(0.0, -1.0));
        assert_eq!(x[1], Complex64::new(0.0, 1.0));
        assert_eq!(exact_solution(1)[0], Complex64::new(0.0, -1.0));
        let ones = exact_solution(7).abs();
        for v in &ones {
            assert_eq!(*v, Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn scalar_problem_rhs() {
        // m = 1: A = [4], x* = (-i), b = -4i - 1
        let p = build_problem(&ConvDiffSpec::new(1, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(p.rhs()[0], Complex64::new(-1.0, -4.0));
    }

    #[test]
    fn built_problems_carry_consistent_exact_solutions() {
        for (m, q, p_shift) in [(3usize, 0.0, 0.0), (4, 10.0, 0.5), (10, 100.0, 0.0)] {
            let spec = ConvDiffSpec::new(m, q, p_shift).unwrap();
            let problem = build_problem(&spec).unwrap();
            let xstar = problem.exact().unwrap().clone();
            let (_, rho) = problem.ave_residual(&xstar).unwrap();
            assert!(rho <= 1e-12, "m={m} q={q} p={p_shift}: rho = {rho:e}");
        }
    }

    #[test]
    fn symmetric_when_no_convection() {
        let spec = ConvDiffSpec::new(4, 0.0, 0.25).unwrap();
        let a = build_matrix(&spec);
        let sp = crate::splitting::split(&a).unwrap();
        assert_eq!(sp.s().nnz(), 0);
    }

    #[test]
    fn hermitian_part_positive_definite_on_paper_ranges() {
        use crate::linsolve::cholesky_factor;
        for (m, q, p_shift) in [(5usize, 0.0, 0.0), (5, 100.0, 0.0), (5, 1000.0, 0.5)] {
            let spec = ConvDiffSpec::new(m, q, p_shift).unwrap();
            let sp = crate::splitting::split(&build_matrix(&spec)).unwrap();
            assert!(
                cholesky_factor(sp.h()).is_ok(),
                "H not PD for m={m} q={q} p={p_shift}"
            );
        }
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(ConvDiffSpec::new(0, 0.0, 0.0).is_err());
        assert!(ConvDiffSpec::new(2, -1.0, 0.0).is_err());
        assert!(ConvDiffSpec::new(2, f64::NAN, 0.0).is_err());
    }
}
