//! `ave oracle-check`: exact sign-enumeration solve of a small real problem.

use std::path::Path;

use anyhow::{bail, Result};
use ave_core::io::{load_matrix_market, load_vector, MatrixData, VectorData};
use ave_core::oracle::{min_singular_exceeds_one, sign_enumeration_solve};
use ave_core::AveProblem;
use serde_json::json;

pub fn run(matrix: &Path, rhs: &Path, n_limit: usize) -> Result<i32> {
    let a = match load_matrix_market(matrix)? {
        MatrixData::Real(a) => a,
        MatrixData::Complex(_) => bail!("the enumeration oracle only handles real matrices"),
    };
    let b = match load_vector(rhs)? {
        VectorData::Real(b) => b,
        VectorData::Complex(_) => bail!("the enumeration oracle only handles real vectors"),
    };

    let unique_certificate = min_singular_exceeds_one(&a);
    let result = sign_enumeration_solve(&a, &b, n_limit)?;

    // report each solution with its independently recomputed residual
    let problem = AveProblem::new(a, b)?;
    let mut solutions = Vec::new();
    for x in &result.solutions {
        let (_, rho) = problem.ave_residual(x)?;
        solutions.push(json!({
            "x": x.as_slice(),
            "residual": rho,
        }));
    }

    let out = json!({
        "n": problem.n(),
        "count": result.solutions.len(),
        "exhaustive": result.exhaustive,
        "min_singular_value_exceeds_one": unique_certificate,
        "solutions": solutions,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(0)
}
