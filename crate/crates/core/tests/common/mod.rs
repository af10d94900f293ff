//! Shared helpers for integration tests: seeded random matrices and problems.

#![allow(dead_code)]

use ave_core::{AveProblem, Scalar, SparseMatrix, Vector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random sparse matrix with entries in [-1, 1] at the given density
/// (diagonal always populated so bandwidth checks stay meaningful).
pub fn random_sparse_real(rng: &mut ChaCha8Rng, n: usize, density: f64) -> SparseMatrix<f64> {
    let mut triplets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || rng.gen::<f64>() < density {
                triplets.push((i, j, rng.gen_range(-1.0..1.0)));
            }
        }
    }
    SparseMatrix::from_triplets(n, n, &triplets).unwrap()
}

pub fn random_sparse_complex(
    rng: &mut ChaCha8Rng,
    n: usize,
    density: f64,
) -> SparseMatrix<Complex64> {
    let mut triplets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || rng.gen::<f64>() < density {
                triplets.push((
                    i,
                    j,
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                ));
            }
        }
    }
    SparseMatrix::from_triplets(n, n, &triplets).unwrap()
}

/// Random positive definite matrix (in the non-Hermitian sense: Hermitian
/// part positive definite), built by making the diagonal dominate the
/// Hermitian part row sums.
pub fn random_pd_real(rng: &mut ChaCha8Rng, n: usize, density: f64) -> SparseMatrix<f64> {
    let base = random_sparse_real(rng, n, density);
    dominate_diagonal(rng, base)
}

pub fn random_pd_complex(rng: &mut ChaCha8Rng, n: usize, density: f64) -> SparseMatrix<Complex64> {
    let base = random_sparse_complex(rng, n, density);
    dominate_diagonal_complex(rng, base)
}

fn dominate_diagonal(rng: &mut ChaCha8Rng, m: SparseMatrix<f64>) -> SparseMatrix<f64> {
    let n = m.nrows();
    let mut triplets: Vec<(usize, usize, f64)> = m.triplets().filter(|&(i, j, _)| i != j).collect();
    let mut row_sum = vec![0.0f64; n];
    for &(i, j, v) in &triplets {
        row_sum[i] += v.abs() / 2.0;
        row_sum[j] += v.abs() / 2.0;
    }
    for i in 0..n {
        triplets.push((i, i, row_sum[i] + 0.5 + rng.gen::<f64>()));
    }
    SparseMatrix::from_triplets(n, n, &triplets).unwrap()
}

fn dominate_diagonal_complex(
    rng: &mut ChaCha8Rng,
    m: SparseMatrix<Complex64>,
) -> SparseMatrix<Complex64> {
    let n = m.nrows();
    let mut triplets: Vec<(usize, usize, Complex64)> =
        m.triplets().filter(|&(i, j, _)| i != j).collect();
    let mut row_sum = vec![0.0f64; n];
    for &(i, j, v) in &triplets {
        row_sum[i] += v.modulus() / 2.0;
        row_sum[j] += v.modulus() / 2.0;
    }
    for i in 0..n {
        triplets.push((
            i,
            i,
            Complex64::new(row_sum[i] + 0.5 + rng.gen::<f64>(), 0.0),
        ));
    }
    SparseMatrix::from_triplets(n, n, &triplets).unwrap()
}

pub fn random_vector_real(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Vector<f64> {
    Vector::new((0..n).map(|_| rng.gen_range(-scale..scale)).collect())
}

pub fn random_vector_complex(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Vector<Complex64> {
    Vector::new(
        (0..n)
            .map(|_| Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)))
            .collect(),
    )
}

/// Random PD problem with a known solution: pick x*, set b = A x* - |x*|.
pub fn random_pd_problem_real(
    rng: &mut ChaCha8Rng,
    n: usize,
    density: f64,
) -> (AveProblem<f64>, Vector<f64>) {
    let a = random_pd_real(rng, n, density);
    let xstar = random_vector_real(rng, n, 2.0);
    let b = a.spmv(&xstar).unwrap().sub(&xstar.abs());
    (AveProblem::new(a, b).unwrap(), xstar)
}

/// Dense mat-vec used as the independent oracle for spmv.
pub fn dense_matvec(dense: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    dense
        .iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}
