//! Compressed sparse row matrices.
//!
//! The canonical form keeps column indices strictly increasing within each
//! row, sums duplicate entries and stores no explicit zeros. All constructors
//! canonicalize, so the invariants hold for every `SparseMatrix` in the wild.

use num_traits::Zero;

use crate::error::{AveError, Result};
use crate::scalar::Scalar;
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<T>,
}

impl<T: Scalar> SparseMatrix<T> {
    /// Builds a canonical CSR matrix from (row, col, value) triplets.
    /// Duplicates are summed; exact zeros (including zero sums) are dropped.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: &[(usize, usize, T)],
    ) -> Result<Self> {
        for &(row, col, _) in triplets {
            if row >= nrows || col >= ncols {
                return Err(AveError::IndexOutOfBounds {
                    row,
                    col,
                    nrows,
                    ncols,
                });
            }
        }
        let mut order: Vec<usize> = (0..triplets.len()).collect();
        order.sort_unstable_by_key(|&k| (triplets[k].0, triplets[k].1));

        let mut row_ptr = vec![0usize; nrows + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());
        let mut k = 0;
        while k < order.len() {
            let (row, col, _) = triplets[order[k]];
            let mut sum = T::zero();
            while k < order.len() {
                let (r, c, v) = triplets[order[k]];
                if r != row || c != col {
                    break;
                }
                sum += v;
                k += 1;
            }
            if sum != T::zero() {
                row_ptr[row + 1] += 1;
                col_idx.push(col);
                values.push(sum);
            }
        }
        for r in 0..nrows {
            row_ptr[r + 1] += row_ptr[r];
        }
        Ok(SparseMatrix {
            nrows,
            ncols,
            row_ptr,
            col_idx,
            values,
        })
    }

    /// Builds a matrix from dense rows; zeros are not stored.
    pub fn from_dense(rows: &[Vec<T>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut triplets = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(AveError::DimensionMismatch(format!(
                    "ragged dense input: row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v != T::zero() {
                    triplets.push((i, j, v));
                }
            }
        }
        Self::from_triplets(nrows, ncols, &triplets)
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            ncols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![T::one(); n],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[T]) {
        let lo = self.row_ptr[i];
        let hi = self.row_ptr[i + 1];
        (&self.col_idx[lo..hi], &self.values[lo..hi])
    }

    /// Stored value at (i, j), or zero.
    pub fn get(&self, i: usize, j: usize) -> T {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(k) => vals[k],
            Err(_) => T::zero(),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..self.nrows).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    /// Re-canonicalizes (a no-op for matrices built by this crate's
    /// constructors; kept for round-tripping external data).
    pub fn canonicalize(&self) -> Self {
        let triplets: Vec<_> = self.triplets().collect();
        Self::from_triplets(self.nrows, self.ncols, &triplets)
            .expect("canonicalization of a valid matrix cannot fail")
    }

    /// Sparse matrix-vector product `y = A x`.
    pub fn spmv(&self, x: &Vector<T>) -> Result<Vector<T>> {
        if x.len() != self.ncols {
            return Err(AveError::DimensionMismatch(format!(
                "spmv: matrix has {} columns, vector has length {}",
                self.ncols,
                x.len()
            )));
        }
        let mut y = Vector::zeros(self.nrows);
        self.spmv_into(x.as_slice(), y.as_mut_slice());
        Ok(y)
    }

    pub(crate) fn spmv_into(&self, x: &[T], y: &mut [T]) {
        for i in 0..self.nrows {
            let (cols, vals) = self.row(i);
            let mut acc = T::zero();
            for (&j, &v) in cols.iter().zip(vals) {
                acc += v * x[j];
            }
            y[i] = acc;
        }
    }

    /// Conjugate transpose `A^H` (plain transpose over the reals).
    pub fn conj_transpose(&self) -> Self {
        let mut row_ptr = vec![0usize; self.ncols + 1];
        for &j in &self.col_idx {
            row_ptr[j + 1] += 1;
        }
        for c in 0..self.ncols {
            row_ptr[c + 1] += row_ptr[c];
        }
        let mut col_idx = vec![0usize; self.nnz()];
        let mut values = vec![T::zero(); self.nnz()];
        let mut next = row_ptr.clone();
        for i in 0..self.nrows {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                let slot = next[j];
                col_idx[slot] = i;
                values[slot] = v.conj();
                next[j] += 1;
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            row_ptr,
            col_idx,
            values,
        }
    }

    /// `ca * A + cb * B` with merged sparsity; exact zero results are dropped.
    pub fn linear_comb(ca: T, a: &Self, cb: T, b: &Self) -> Result<Self> {
        if a.nrows != b.nrows || a.ncols != b.ncols {
            return Err(AveError::DimensionMismatch(format!(
                "linear_comb: {}x{} vs {}x{}",
                a.nrows, a.ncols, b.nrows, b.ncols
            )));
        }
        let mut row_ptr = vec![0usize; a.nrows + 1];
        let mut col_idx = Vec::with_capacity(a.nnz() + b.nnz());
        let mut values = Vec::with_capacity(a.nnz() + b.nnz());
        for i in 0..a.nrows {
            let (ac, av) = a.row(i);
            let (bc, bv) = b.row(i);
            let (mut ka, mut kb) = (0, 0);
            while ka < ac.len() || kb < bc.len() {
                let (col, v) = if kb >= bc.len() || (ka < ac.len() && ac[ka] < bc[kb]) {
                    let out = (ac[ka], ca * av[ka]);
                    ka += 1;
                    out
                } else if ka >= ac.len() || bc[kb] < ac[ka] {
                    let out = (bc[kb], cb * bv[kb]);
                    kb += 1;
                    out
                } else {
                    let out = (ac[ka], ca * av[ka] + cb * bv[kb]);
                    ka += 1;
                    kb += 1;
                    out
                };
                if v != T::zero() {
                    col_idx.push(col);
                    values.push(v);
                    row_ptr[i + 1] += 1;
                }
            }
        }
        for r in 0..a.nrows {
            row_ptr[r + 1] += row_ptr[r];
        }
        Ok(SparseMatrix {
            nrows: a.nrows,
            ncols: a.ncols,
            row_ptr,
            col_idx,
            values,
        })
    }

    /// `A + shift * I` for square matrices.
    pub fn plus_scaled_identity(&self, shift: T) -> Result<Self> {
        if !self.is_square() {
            return Err(AveError::NotSquare {
                nrows: self.nrows,
                ncols: self.ncols,
            });
        }
        Self::linear_comb(T::one(), self, shift, &Self::identity(self.nrows))
    }

    pub fn scale(&self, factor: T) -> Self {
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= factor;
        }
        out
    }

    pub fn map_values<U: Scalar>(&self, f: impl Fn(T) -> U) -> SparseMatrix<U> {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            row_ptr: self.row_ptr.clone(),
            col_idx: self.col_idx.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Promotes a real matrix into the complex field.
    pub fn to_complex(&self) -> SparseMatrix<num_complex::Complex<T::Real>>
    where
        num_complex::Complex<T::Real>: Scalar<Real = T::Real>,
    {
        self.map_values(|v| num_complex::Complex::new(v.real_part(), v.imag_part()))
    }

    /// Lower and upper bandwidths `(kl, ku)` of the stored pattern.
    pub fn bandwidth(&self) -> (usize, usize) {
        let mut kl = 0;
        let mut ku = 0;
        for i in 0..self.nrows {
            let (cols, _) = self.row(i);
            if let Some(&first) = cols.first() {
                kl = kl.max(i.saturating_sub(first));
            }
            if let Some(&last) = cols.last() {
                ku = ku.max(last.saturating_sub(i));
            }
        }
        (kl, ku)
    }

    /// Dense row-major copy; intended for small matrices in tests and the
    /// sign-enumeration oracle.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.ncols]; self.nrows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v;
        }
        out
    }

    /// Largest entry modulus (zero for an empty matrix).
    pub fn max_modulus(&self) -> T::Real {
        self.values
            .iter()
            .map(|v| v.modulus())
            .fold(T::Real::zero(), |a, b| if b > a { b } else { a })
    }
}
