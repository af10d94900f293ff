//! Hermitian/skew-Hermitian splitting and the shifted factorizations every
//! iteration reuses.

use crate::error::{AveError, Result};
use crate::linsolve::{cholesky_factor, lu_factor, CholeskyFactor, LuFactor};
use crate::scalar::Scalar;
use crate::sparse::SparseMatrix;
use crate::vector::Vector;

/// The splitting `A = H + S` with `H = (A + A^H)/2` Hermitian and
/// `S = (A - A^H)/2` skew-Hermitian.
#[derive(Debug, Clone)]
pub struct HssSplitting<T> {
    h: SparseMatrix<T>,
    s: SparseMatrix<T>,
}

impl<T: Scalar> HssSplitting<T> {
    pub fn h(&self) -> &SparseMatrix<T> {
        &self.h
    }

    pub fn s(&self) -> &SparseMatrix<T> {
        &self.s
    }

    pub fn n(&self) -> usize {
        self.h.nrows()
    }
}

/// Splits a square matrix into its Hermitian and skew-Hermitian parts.
pub fn split<T: Scalar>(a: &SparseMatrix<T>) -> Result<HssSplitting<T>> {
    if !a.is_square() {
        return Err(AveError::NotSquare {
            nrows: a.nrows(),
            ncols: a.ncols(),
        });
    }
    let ah = a.conj_transpose();
    let half = T::from_real(crate::scalar::real_from_f64(0.5));
    let h = SparseMatrix::linear_comb(half, a, half, &ah)?;
    let s = SparseMatrix::linear_comb(half, a, -half, &ah)?;
    Ok(HssSplitting { h, s })
}

/// `alpha I + H` (Cholesky-factored) and `alpha I + S` (LU-factored),
/// together with the splitting itself. Built once per (problem, alpha) pair
/// and shared by all sweeps.
#[derive(Debug, Clone)]
pub struct ShiftedFactors<T: Scalar> {
    alpha: f64,
    splitting: HssSplitting<T>,
    herm: CholeskyFactor<T>,
    skew: LuFactor<T>,
}

/// Factors the two shifted matrices. `alpha` must be positive; a Cholesky
/// breakdown means `alpha I + H` is not positive definite.
pub fn factorize<T: Scalar>(splitting: &HssSplitting<T>, alpha: f64) -> Result<ShiftedFactors<T>> {
    if !(alpha > 0.0) {
        return Err(AveError::InvalidArgument(format!(
            "shift alpha must be positive, got {alpha}"
        )));
    }
    let shift = T::from_real(crate::scalar::real_from_f64(alpha));
    let herm = cholesky_factor(&splitting.h.plus_scaled_identity(shift)?)?;
    let skew = lu_factor(&splitting.s.plus_scaled_identity(shift)?)?;
    Ok(ShiftedFactors {
        alpha,
        splitting: splitting.clone(),
        herm,
        skew,
    })
}

impl<T: Scalar> ShiftedFactors<T> {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn alpha_scalar(&self) -> T {
        T::from_real(crate::scalar::real_from_f64(self.alpha))
    }

    pub fn h(&self) -> &SparseMatrix<T> {
        self.splitting.h()
    }

    pub fn s(&self) -> &SparseMatrix<T> {
        self.splitting.s()
    }

    pub fn n(&self) -> usize {
        self.splitting.n()
    }

    /// Solves `(alpha I + H) y = rhs`.
    pub fn solve_hermitian_shift(&self, rhs: &Vector<T>) -> Result<Vector<T>> {
        if rhs.len() != self.n() {
            return Err(AveError::DimensionMismatch(format!(
                "rhs has length {}, expected {}",
                rhs.len(),
                self.n()
            )));
        }
        let mut y = rhs.clone();
        self.herm.solve_in_place(y.as_mut_slice());
        Ok(y)
    }

    /// Solves `(alpha I + S) y = rhs`.
    pub fn solve_skew_shift(&self, rhs: &Vector<T>) -> Result<Vector<T>> {
        if rhs.len() != self.n() {
            return Err(AveError::DimensionMismatch(format!(
                "rhs has length {}, expected {}",
                rhs.len(),
                self.n()
            )));
        }
        let mut y = rhs.clone();
        self.skew.solve_in_place(y.as_mut_slice());
        Ok(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn symmetric_real_matrix_has_zero_skew_part() {
        let a = SparseMatrix::from_dense(&[vec![4.0, -1.0], vec![-1.0, 4.0]]).unwrap();
        let sp = split(&a).unwrap();
        assert_eq!(sp.s().nnz(), 0);
        assert_eq!(sp.h(), &a);
    }

    #[test]
    fn skew_symmetric_matrix_has_zero_hermitian_part() {
        let a = SparseMatrix::from_dense(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        let sp = split(&a).unwrap();
        assert_eq!(sp.h().nnz(), 0);
        assert_eq!(sp.s(), &a);
    }

    #[test]
    fn convection_off_diagonals_split_as_expected() {
        let re = 1.0f64 / 6.0;
        let a = SparseMatrix::from_dense(&[vec![4.0, -1.0 - re], vec![-1.0 + re, 4.0]]).unwrap();
        let sp = split(&a).unwrap();
        assert_eq!(sp.h().get(0, 1), -1.0);
        assert_eq!(sp.h().get(1, 0), -1.0);
        assert_eq!(sp.h().get(0, 0), 4.0);
        assert!((sp.s().get(0, 1) - (-re)).abs() <= 1e-16);
        assert!((sp.s().get(1, 0) - re).abs() <= 1e-16);
        assert_eq!(sp.s().get(0, 0), 0.0);
    }

    #[test]
    fn non_square_input_rejected() {
        let a = SparseMatrix::<f64>::from_triplets(2, 3, &[(0, 0, 1.0)]).unwrap();
        assert!(matches!(split(&a), Err(AveError::NotSquare { .. })));
    }

    #[test]
    fn hermitian_shift_solve_identity_case() {
        // H = I, S = 0, alpha = 1: (2 I) y = (2, 2) -> y = (1, 1)
        let sp = split(&SparseMatrix::<f64>::identity(2)).unwrap();
        let f = factorize(&sp, 1.0).unwrap();
        let y = f
            .solve_hermitian_shift(&Vector::new(vec![2.0, 2.0]))
            .unwrap();
        for v in &y {
            assert!((v - 1.0).abs() <= 1e-15);
        }
        let z = f.solve_hermitian_shift(&Vector::zeros(2)).unwrap();
        assert_eq!(z.as_slice(), &[0.0, 0.0]);
    }

    #[test]
    fn skew_shift_solve_two_by_two() {
        let a = SparseMatrix::from_dense(&[vec![0.0f64, -1.0], vec![1.0, 0.0]]).unwrap();
        let sp = split(&a).unwrap();
        let f = factorize(&sp, 1.0).unwrap();
        let y = f.solve_skew_shift(&Vector::new(vec![1.0, 1.0])).unwrap();
        assert!((y[0] - 1.0).abs() <= 1e-15);
        assert!(y[1].abs() <= 1e-15);
    }

    #[test]
    fn skew_shift_diagonal_when_s_zero() {
        let a = SparseMatrix::from_dense(&[vec![1.0]]).unwrap();
        let sp = split(&a).unwrap();
        let f = factorize(&sp, 2.0).unwrap();
        // S = 0, alpha = 2: (2 I) y = 4 -> 2... the solve is against alpha I + S = 2 I
        let y = f.solve_skew_shift(&Vector::new(vec![4.0])).unwrap();
        assert_eq!(y.as_slice(), &[2.0]);
    }

    #[test]
    fn extreme_shifts_factor_cleanly() {
        let a = SparseMatrix::from_dense(&[vec![4.0, -1.0], vec![-1.0, 4.0]]).unwrap();
        let sp = split(&a).unwrap();
        assert!(factorize(&sp, 1e-8).is_ok());
        assert!(factorize(&sp, 1e8).is_ok());
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        let sp = split(&SparseMatrix::<f64>::identity(2)).unwrap();
        assert!(factorize(&sp, 0.0).is_err());
        assert!(factorize(&sp, -1.0).is_err());
    }

    #[test]
    fn complex_matrix_splits_hermitian() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let a =
            SparseMatrix::from_dense(&[vec![one * 4.0, one + i], vec![one * 2.0 - i, one * 4.0]])
                .unwrap();
        let sp = split(&a).unwrap();
        // H must equal its own conjugate transpose, S its negation
        let hh = sp.h().conj_transpose();
        let sh = sp.s().conj_transpose();
        for idx in 0..2 {
            for jdx in 0..2 {
                assert!((sp.h().get(idx, jdx) - hh.get(idx, jdx)).modulus() <= 1e-16);
                assert!((sp.s().get(idx, jdx) + sh.get(idx, jdx)).modulus() <= 1e-16);
                let sum = sp.h().get(idx, jdx) + sp.s().get(idx, jdx);
                assert!((sum - a.get(idx, jdx)).modulus() <= 1e-16);
            }
        }
    }
}
