//! Problem loading: from generated files or from a generator spec.

use std::path::Path;

use anyhow::{bail, Context, Result};
use ave_core::io::{load_matrix_market, load_vector, MatrixData, VectorData};
use ave_core::problems::{build_problem, ConvDiffSpec};
use ave_core::{AveProblem, ComplexAveProblem, RealAveProblem};

/// A problem in whichever field its inputs live.
pub enum LoadedProblem {
    Real(RealAveProblem),
    Complex(ComplexAveProblem),
}

/// Loads a problem from a matrix file and a right-hand-side vector file,
/// promoting to the complex field when either input is complex.
pub fn load_problem_files(
    matrix: &Path,
    rhs: &Path,
    exact: Option<&Path>,
) -> Result<LoadedProblem> {
    let matrix = load_matrix_market(matrix)
        .with_context(|| format!("reading matrix {}", matrix.display()))?;
    let rhs = load_vector(rhs).with_context(|| format!("reading rhs {}", rhs.display()))?;
    let exact = match exact {
        Some(path) => Some(
            load_vector(path)
                .with_context(|| format!("reading exact solution {}", path.display()))?,
        ),
        None => None,
    };

    let any_complex = matches!(matrix, MatrixData::Complex(_))
        || matches!(rhs, VectorData::Complex(_))
        || matches!(exact, Some(VectorData::Complex(_)));

    if any_complex {
        let a = matrix.into_complex();
        let b = rhs.into_complex();
        let problem = match exact {
            Some(x) => AveProblem::with_exact(a, b, x.into_complex())?,
            None => AveProblem::new(a, b)?,
        };
        Ok(LoadedProblem::Complex(problem))
    } else {
        let a = match matrix {
            MatrixData::Real(a) => a,
            MatrixData::Complex(_) => unreachable!(),
        };
        let b = match rhs {
            VectorData::Real(b) => b,
            VectorData::Complex(_) => unreachable!(),
        };
        let problem = match exact {
            Some(VectorData::Real(x)) => AveProblem::with_exact(a, b, x)?,
            None => AveProblem::new(a, b)?,
            Some(VectorData::Complex(_)) => unreachable!(),
        };
        Ok(LoadedProblem::Real(problem))
    }
}

/// Builds the convection-diffusion problem for `(m, q, p)`.
pub fn spec_problem(m: usize, q: f64, p: f64) -> Result<ComplexAveProblem> {
    Ok(build_problem(&ConvDiffSpec::new(m, q, p)?)?)
}

/// Resolves the solve input: either all three spec parameters or a pair of
/// files, never both.
pub fn resolve_problem(
    m: Option<usize>,
    q: f64,
    p: f64,
    matrix: Option<&Path>,
    rhs: Option<&Path>,
    exact: Option<&Path>,
) -> Result<LoadedProblem> {
    match (m, matrix, rhs) {
        (Some(m), None, None) => Ok(LoadedProblem::Complex(spec_problem(m, q, p)?)),
        (None, Some(matrix), Some(rhs)) => load_problem_files(matrix, rhs, exact),
        (None, None, None) => bail!("provide either --m (with --q/--p) or --matrix and --rhs"),
        _ => bail!("--m and --matrix/--rhs are mutually exclusive"),
    }
}
