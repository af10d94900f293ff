//! Direct factorization kernels.
//!
//! Both factorizations use banded storage sized from the matrix bandwidth, so
//! the convection-diffusion family (bandwidth m for n = m^2 unknowns) factors
//! in O(n m^2) time and O(n m) memory. A matrix with full bandwidth degrades
//! to the dense algorithm with at most 3x dense-LU storage, which is
//! acceptable at the problem sizes this crate targets.

use num_traits::{Float, Zero};

use crate::error::FactorizationError;
use crate::scalar::{real_from_f64, Scalar};
use crate::sparse::SparseMatrix;

/// Relative pivot threshold below which a Cholesky pivot is treated as a loss
/// of positive definiteness rather than round-off.
const CHOLESKY_PIVOT_RTOL: f64 = 1e-14;

/// Cholesky factorization `M = L L^H` of a Hermitian banded matrix.
///
/// Only the lower triangle of the input is read; the strict upper triangle is
/// assumed to be its conjugate mirror.
#[derive(Debug, Clone)]
pub struct CholeskyFactor<T> {
    n: usize,
    /// Lower bandwidth of L.
    band: usize,
    /// Row-major banded storage: slot `c` of row `i` holds `L[i, i - band + c]`.
    lower: Vec<T>,
}

/// Computes the Cholesky factor of a Hermitian positive definite matrix.
pub fn cholesky_factor<T: Scalar>(
    m: &SparseMatrix<T>,
) -> Result<CholeskyFactor<T>, FactorizationError> {
    let n = m.nrows();
    let (kl, ku) = m.bandwidth();
    let band = kl.max(ku);
    let width = band + 1;

    let mut lower = vec![T::zero(); n * width];
    for (i, j, v) in m.triplets() {
        if j <= i && i - j <= band {
            lower[i * width + (j + band - i)] = v;
        }
    }

    let max_diag = (0..n)
        .map(|i| m.get(i, i).real_part())
        .fold(T::Real::zero(), |a, b| if b > a { b } else { a });
    let pivot_floor = real_from_f64::<T::Real>(CHOLESKY_PIVOT_RTOL) * max_diag;

    for j in 0..n {
        // pivot: M[j,j] minus the squared row of L built so far
        let mut d = lower[j * width + band].real_part();
        let lo = j.saturating_sub(band);
        for k in lo..j {
            let ljk = lower[j * width + (k + band - j)];
            d -= ljk.modulus_sq();
        }
        if !(d > pivot_floor) || !d.is_finite() {
            return Err(FactorizationError::CholeskyBreakdown { index: j });
        }
        let ljj = d.sqrt();
        lower[j * width + band] = T::from_real(ljj);

        let hi = (j + band).min(n - 1);
        for i in (j + 1)..=hi {
            let mut v = lower[i * width + (j + band - i)];
            let lo_i = i.saturating_sub(band).max(lo);
            for k in lo_i..j {
                let lik = lower[i * width + (k + band - i)];
                let ljk = lower[j * width + (k + band - j)];
                v -= lik * ljk.conj();
            }
            lower[i * width + (j + band - i)] = v / T::from_real(ljj);
        }
    }

    Ok(CholeskyFactor { n, band, lower })
}

impl<T: Scalar> CholeskyFactor<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Solves `M x = b` in place via `L y = b`, `L^H x = y`.
    pub fn solve_in_place(&self, b: &mut [T]) {
        let n = self.n;
        let w = self.band + 1;
        // forward
        for i in 0..n {
            let mut acc = b[i];
            let lo = i.saturating_sub(self.band);
            for k in lo..i {
                acc -= self.lower[i * w + (k + self.band - i)] * b[k];
            }
            b[i] = acc / self.lower[i * w + self.band];
        }
        // backward with L^H
        for i in (0..n).rev() {
            let mut acc = b[i];
            let hi = (i + self.band).min(n - 1);
            for k in (i + 1)..=hi {
                acc -= self.lower[k * w + (i + self.band - k)].conj() * b[k];
            }
            b[i] = acc / self.lower[i * w + self.band];
        }
    }

    /// The factor as dense rows; verification helper.
    pub fn lower_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.n]; self.n];
        let w = self.band + 1;
        for i in 0..self.n {
            let lo = i.saturating_sub(self.band);
            for j in lo..=i {
                out[i][j] = self.lower[i * w + (j + self.band - i)];
            }
        }
        out
    }

    /// Rebuilds `L L^H` densely; verification helper.
    pub fn reconstruct_dense(&self) -> Vec<Vec<T>> {
        let l = self.lower_dense();
        let mut out = vec![vec![T::zero(); self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = T::zero();
                for k in 0..=i.min(j) {
                    acc += l[i][k] * l[j][k].conj();
                }
                out[i][j] = acc;
            }
        }
        out
    }
}

/// LU factorization with partial pivoting in banded storage.
///
/// Follows the classic compact band scheme: every active row is kept
/// left-justified at the current elimination column, so row interchanges are
/// plain swaps of the compact rows. Pivoting widens the upper bandwidth from
/// `ku` to `kl + ku`.
#[derive(Debug, Clone)]
pub struct LuFactor<T> {
    n: usize,
    kl: usize,
    /// Upper factor, row-major with width `kl + ku + 1`; slot `c` of row `k`
    /// holds `U[k, k + c]`.
    upper: Vec<T>,
    width: usize,
    /// Elimination multipliers: `mult[k * kl + (i - k - 1)]` removed row `i`
    /// at step `k` (after the step's interchange).
    mult: Vec<T>,
    /// Pivot row chosen at each step.
    piv: Vec<usize>,
}

/// Factors a square matrix as `P M = L U` (partial pivoting).
pub fn lu_factor<T: Scalar>(m: &SparseMatrix<T>) -> Result<LuFactor<T>, FactorizationError> {
    let n = m.nrows();
    let (kl, ku_orig) = m.bandwidth();
    let kl = kl.min(n.saturating_sub(1));
    let ku = (ku_orig + kl).min(n.saturating_sub(1)); // fill from pivoting
    let width = ku + 1;

    // Band rows stored left-justified at the current elimination column: at
    // step k every row i >= k has slot 0 at column k.
    let mut ab = vec![T::zero(); n * width];
    for (i, j, v) in m.triplets() {
        // initial left-justified layout: slot = j - max(i - kl, 0)
        let first = i.saturating_sub(kl);
        ab[i * width + (j - first)] = v;
    }

    let eps: T::Real = real_from_f64(f64::EPSILON);
    let singular_floor = eps * m.max_modulus() * real_from_f64(n.max(1) as f64);

    let mut mult = vec![T::zero(); n * kl.max(1)];
    let mut piv = vec![0usize; n];

    for k in 0..n {
        let last = (k + kl).min(n - 1);
        let mut best = k;
        let mut best_mag = ab[k * width].modulus();
        for i in (k + 1)..=last {
            let mag = ab[i * width].modulus();
            if mag > best_mag {
                best = i;
                best_mag = mag;
            }
        }
        if !(best_mag > singular_floor) || !best_mag.is_finite() {
            return Err(FactorizationError::Singular { index: k });
        }
        piv[k] = best;
        if best != k {
            for c in 0..width {
                ab.swap(k * width + c, best * width + c);
            }
        }
        let pivot = ab[k * width];
        for i in (k + 1)..=last {
            let factor = ab[i * width] / pivot;
            mult[k * kl.max(1) + (i - k - 1)] = factor;
            // eliminate and shift row i one slot left so it stays justified
            for c in 1..width {
                ab[i * width + c - 1] = ab[i * width + c] - factor * ab[k * width + c];
            }
            ab[i * width + width - 1] = T::zero();
        }
    }

    Ok(LuFactor {
        n,
        kl,
        upper: ab,
        width,
        mult,
        piv,
    })
}

impl<T: Scalar> LuFactor<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Solves `M x = b` in place, replaying interchanges and multipliers and
    /// back-substituting with the banded upper factor.
    pub fn solve_in_place(&self, b: &mut [T]) {
        let n = self.n;
        let klw = self.kl.max(1);
        for k in 0..n {
            let r = self.piv[k];
            if r != k {
                b.swap(k, r);
            }
            let last = (k + self.kl).min(n - 1);
            for i in (k + 1)..=last {
                let factor = self.mult[k * klw + (i - k - 1)];
                b[i] = b[i] - factor * b[k];
            }
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            let reach = (self.width - 1).min(n - 1 - i);
            for c in 1..=reach {
                acc -= self.upper[i * self.width + c] * b[i + c];
            }
            b[i] = acc / self.upper[i * self.width];
        }
    }

    /// Rebuilds the original matrix densely by undoing the elimination steps
    /// in reverse; verification helper.
    pub fn reconstruct_dense(&self) -> Vec<Vec<T>> {
        let n = self.n;
        let mut rows = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            let reach = (self.width - 1).min(n - 1 - i);
            for c in 0..=reach {
                rows[i][i + c] = self.upper[i * self.width + c];
            }
        }
        let klw = self.kl.max(1);
        for k in (0..n).rev() {
            let last = (k + self.kl).min(n - 1);
            for i in (k + 1)..=last {
                let factor = self.mult[k * klw + (i - k - 1)];
                for j in 0..n {
                    let add = factor * rows[k][j];
                    rows[i][j] += add;
                }
            }
            if self.piv[k] != k {
                rows.swap(k, self.piv[k]);
            }
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::Vector;
    use num_complex::Complex64;

    fn solve_chol(m: &SparseMatrix<f64>, rhs: Vec<f64>) -> Vec<f64> {
        let f = cholesky_factor(m).unwrap();
        let mut b = rhs;
        f.solve_in_place(&mut b);
        b
    }

    #[test]
    fn cholesky_of_scaled_identity() {
        let m = SparseMatrix::from_dense(&[vec![4.0, 0.0], vec![0.0, 4.0]]).unwrap();
        let f = cholesky_factor(&m).unwrap();
        let l = f.lower_dense();
        assert_eq!(l[0][0], 2.0);
        assert_eq!(l[1][1], 2.0);
        assert_eq!(l[1][0], 0.0);
    }

    #[test]
    fn cholesky_reconstructs_two_by_two() {
        let m = SparseMatrix::from_dense(&[vec![4.0, -1.0], vec![-1.0, 4.0]]).unwrap();
        let f = cholesky_factor(&m).unwrap();
        let r = f.reconstruct_dense();
        for i in 0..2 {
            for j in 0..2 {
                assert!((r[i][j] - m.get(i, j)).abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let m = SparseMatrix::from_dense(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        let err = cholesky_factor(&m).unwrap_err();
        assert_eq!(err, FactorizationError::CholeskyBreakdown { index: 1 });
    }

    #[test]
    fn cholesky_solve_diagonal() {
        let m = SparseMatrix::from_dense(&[vec![2.0, 0.0], vec![0.0, 2.0]]).unwrap();
        for v in solve_chol(&m, vec![2.0, 2.0]) {
            assert!((v - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn cholesky_complex_hermitian() {
        let i = Complex64::new(0.0, 1.0);
        let m = SparseMatrix::from_dense(&[
            vec![Complex64::new(4.0, 0.0), Complex64::new(1.0, 0.0) + i],
            vec![Complex64::new(1.0, 0.0) - i, Complex64::new(4.0, 0.0)],
        ])
        .unwrap();
        let f = cholesky_factor(&m).unwrap();
        let r = f.reconstruct_dense();
        for ii in 0..2 {
            for jj in 0..2 {
                assert!((r[ii][jj] - m.get(ii, jj)).modulus() <= 1e-14);
            }
        }
        let mut b = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)];
        let rhs = b.clone();
        f.solve_in_place(&mut b);
        let x = Vector::new(b);
        let res = m.spmv(&x).unwrap().sub(&Vector::new(rhs));
        assert!(res.norm2() <= 1e-13);
    }

    #[test]
    fn lu_of_identity_is_trivial() {
        let m = SparseMatrix::<f64>::identity(3);
        let f = lu_factor(&m).unwrap();
        let r = f.reconstruct_dense();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(r[i][j], if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn lu_pivots_on_permutation_matrix() {
        let m = SparseMatrix::from_dense(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let f = lu_factor(&m).unwrap();
        let r = f.reconstruct_dense();
        assert_eq!(r[0][1], 1.0);
        assert_eq!(r[1][0], 1.0);
        assert_eq!(r[0][0], 0.0);
        let mut b = vec![3.0, 7.0];
        f.solve_in_place(&mut b);
        assert_eq!(b, vec![7.0, 3.0]);
    }

    #[test]
    fn lu_detects_exact_singularity() {
        let m = SparseMatrix::from_dense(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let err = lu_factor(&m).unwrap_err();
        assert!(matches!(err, FactorizationError::Singular { .. }));
    }

    #[test]
    fn lu_skew_shift_solve() {
        // (I + S) x = (1, 1) with S = [[0,-1],[1,0]] has solution (1, 0)
        let m = SparseMatrix::from_dense(&[vec![1.0, -1.0], vec![1.0, 1.0]]).unwrap();
        let f = lu_factor(&m).unwrap();
        let mut b = vec![1.0, 1.0];
        f.solve_in_place(&mut b);
        assert!((b[0] - 1.0).abs() <= 1e-15);
        assert!(b[1].abs() <= 1e-15);
    }
}
