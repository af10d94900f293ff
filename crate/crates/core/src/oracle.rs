//! Ground-truth machinery, independent of the iterative solvers.
//!
//! Over the reals, `|x| = D x` for the diagonal sign matrix `D` matching the
//! sign pattern of `x`, so every AVE solution solves `(A - D) y = b` for one
//! of the 2^n patterns. Enumerating all patterns with a dense LU gives the
//! complete solution set for small `n`; this module is restricted to the real
//! field by its signatures.

use nalgebra::{DMatrix, DVector};

use crate::error::{AveError, Result};
use crate::sparse::SparseMatrix;
use crate::vector::Vector;

/// Default size cap for the enumeration (2^n solves).
pub const DEFAULT_N_LIMIT: usize = 20;

/// Residual each reported solution must satisfy, relative to `max(1, ||b||)`.
pub const ORACLE_RESIDUAL_TOL: f64 = 1e-10;

/// Margin above 1 required of the smallest singular value.
const SINGULAR_VALUE_MARGIN: f64 = 1e-12;

/// All solutions found by sign enumeration.
#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Accepted solutions, sorted lexicographically, deduplicated.
    pub solutions: Vec<Vector<f64>>,
    /// False when some sign pattern led to a singular-but-consistent system,
    /// whose (infinitely many) solutions cannot be enumerated.
    pub exhaustive: bool,
}

fn to_dense(a: &SparseMatrix<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(a.nrows(), a.ncols());
    for (i, j, v) in a.triplets() {
        m[(i, j)] = v;
    }
    m
}

/// Solves the AVE exactly by testing all `2^n` sign patterns.
///
/// For each diagonal `D` with entries in {+1, -1}, solves `(A - D) y = b` by
/// dense LU and accepts `y` when `d_i y_i >= 0` for every component (zero
/// entries are compatible with either sign) and the AVE residual check
/// passes. Singular patterns with an inconsistent right-hand side are
/// skipped; consistent singular patterns flag the result non-exhaustive.
pub fn sign_enumeration_solve(
    a: &SparseMatrix<f64>,
    b: &Vector<f64>,
    n_limit: usize,
) -> Result<OracleResult> {
    if !a.is_square() {
        return Err(AveError::NotSquare {
            nrows: a.nrows(),
            ncols: a.ncols(),
        });
    }
    let n = a.nrows();
    if n != b.len() {
        return Err(AveError::DimensionMismatch(format!(
            "matrix is {}x{} but rhs has length {}",
            n,
            n,
            b.len()
        )));
    }
    if n > n_limit {
        return Err(AveError::OracleLimit { n, limit: n_limit });
    }

    let dense = to_dense(a);
    let rhs = DVector::from_column_slice(b.as_slice());
    let nb = b.norm2().max(1.0);

    let mut solutions: Vec<Vector<f64>> = Vec::new();
    let mut exhaustive = true;

    for mask in 0u64..(1u64 << n) {
        let mut shifted = dense.clone();
        let mut signs = vec![1.0f64; n];
        for (i, s) in signs.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                *s = -1.0;
            }
            shifted[(i, i)] -= *s;
        }

        let solved = shifted.clone().lu().solve(&rhs);
        let y = match solved {
            Some(y) if (&shifted * &y - &rhs).norm() <= 1e-8 * nb => y,
            _ => {
                // singular or numerically unusable pattern: decide whether
                // solutions were lost by checking consistency via least squares
                let svd = shifted.clone().svd(true, true);
                if let Ok(u) = svd.solve(&rhs, 1e-12) {
                    if (&shifted * &u - &rhs).norm() <= 1e-8 * nb {
                        exhaustive = false;
                    }
                }
                continue;
            }
        };

        let scale = y.amax().max(1.0);
        let sign_ok = (0..n).all(|i| signs[i] * y[i] >= -1e-12 * scale);
        if !sign_ok {
            continue;
        }

        let candidate = Vector::new(y.iter().copied().collect());
        // exact residual with true absolute values, not D y
        let ay = a.spmv(&candidate)?;
        let r: f64 = (0..n)
            .map(|i| {
                let ri = ay[i] - candidate[i].abs() - b[i];
                ri * ri
            })
            .sum::<f64>()
            .sqrt();
        if r > ORACLE_RESIDUAL_TOL * nb {
            continue;
        }

        let duplicate = solutions.iter().any(|s| {
            let diff = s.sub(&candidate).norm2();
            diff <= 1e-9 * s.norm2().max(1.0)
        });
        if !duplicate {
            solutions.push(candidate);
        }
    }

    solutions.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b.iter()) {
            match x.partial_cmp(y) {
                Some(std::cmp::Ordering::Equal) | None => continue,
                Some(ord) => return ord,
            }
        }
        std::cmp::Ordering::Equal
    });

    Ok(OracleResult {
        solutions,
        exhaustive,
    })
}

/// Whether the smallest singular value of `A` exceeds 1 (the classical
/// sufficient condition for the AVE to have a unique solution for every
/// right-hand side). Dense SVD; intended for desk-scale matrices.
pub fn min_singular_exceeds_one(a: &SparseMatrix<f64>) -> bool {
    if a.nrows() == 0 || !a.is_square() {
        return false;
    }
    let svd = to_dense(a).svd(false, false);
    let min = svd
        .singular_values
        .iter()
        .fold(f64::INFINITY, |acc, &s| acc.min(s));
    min > 1.0 + SINGULAR_VALUE_MARGIN
}
