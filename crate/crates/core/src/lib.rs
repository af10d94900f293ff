//! Solvers for the absolute value equation (AVE)
//!
//! ```text
//! A x - |x| = b
//! ```
//!
//! where `|x|` is the component-wise absolute value (modulus for complex
//! entries). The crate provides:
//!
//! * CSR sparse matrices and dense vectors over a generic scalar field
//!   ([`Scalar`]: real or complex);
//! * the Hermitian/skew-Hermitian splitting `A = H + S` with reusable banded
//!   Cholesky/LU factorizations of the shifted matrices `alpha I + H` and
//!   `alpha I + S` ([`splitting`]);
//! * the stationary HSS iteration for linear systems ([`linsolve`]);
//! * three AVE solvers - Picard, Picard-HSS and the nonlinear HSS-like
//!   iteration with its residual-updating variant ([`avesolvers`]);
//! * a convection-diffusion test-problem generator ([`problems`]);
//! * a brute-force sign-enumeration oracle for small real instances
//!   ([`oracle`]);
//! * grid search for the shift parameter alpha ([`tuning`]);
//! * Matrix Market and plain vector file I/O ([`io`]).
//!
//! The scalar field is a type parameter: the solvers run unchanged over `f64`
//! and `Complex<f64>` (aliases [`RealScalar`], [`ComplexScalar`]). A real
//! matrix paired with complex vectors is promoted with
//! [`SparseMatrix::to_complex`].
//!
//! ```
//! use ave_core::problems::{build_problem, ConvDiffSpec};
//! use ave_core::{hss_like, AveSolveOptions};
//!
//! let problem = build_problem(&ConvDiffSpec::new(10, 0.0, 0.0)?)?;
//! let report = hss_like(&problem, 1.3, &AveSolveOptions::default())?;
//! assert!(report.converged());
//! assert_eq!(report.total_iterations, 27);
//! let (_, residual) = problem.ave_residual(&report.x)?;
//! assert!(residual <= 1e-5);
//! # Ok::<(), ave_core::AveError>(())
//! ```

pub mod avesolvers;
pub mod error;
pub mod io;
pub mod linsolve;
pub mod oracle;
pub mod problem;
pub mod problems;
pub mod scalar;
pub mod sparse;
pub mod splitting;
pub mod tuning;
pub mod vector;

pub use avesolvers::{
    hss_like, hss_like_residual_step, hss_like_residual_variant, hss_like_step, picard, picard_hss,
    solve_with, AveSolveOptions, Method, PicardHssOptions,
};
pub use error::{AveError, FactorizationError, Result};
pub use problem::{AveProblem, SolveReport, SolveStatus, DIVERGENCE_RATIO};
pub use scalar::Scalar;
pub use sparse::SparseMatrix;
pub use vector::Vector;

/// Real double-precision scalar.
pub type RealScalar = f64;
/// Complex double-precision scalar.
pub type ComplexScalar = num_complex::Complex<f64>;

pub type RealVector = Vector<RealScalar>;
pub type ComplexVector = Vector<ComplexScalar>;
pub type RealMatrix = SparseMatrix<RealScalar>;
pub type ComplexMatrix = SparseMatrix<ComplexScalar>;
pub type RealAveProblem = AveProblem<RealScalar>;
pub type ComplexAveProblem = AveProblem<ComplexScalar>;
