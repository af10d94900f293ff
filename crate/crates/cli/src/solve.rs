//! `ave solve`: run one solver on one problem, print the report as JSON.

use anyhow::Result;
use ave_core::{
    solve_with, AveProblem, Method, PicardHssOptions, Scalar, SolveReport, SolveStatus,
};
use serde::Serialize;

use crate::input::LoadedProblem;

#[derive(Serialize)]
#[serde(bound(serialize = "T: serde::Serialize"))]
struct SolveOutput<T: Scalar> {
    method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    n: usize,
    /// Relative residual recomputed from the returned iterate.
    residual: f64,
    #[serde(flatten)]
    report: SolveReport<T>,
}

fn run_generic<T: Scalar + Serialize>(
    problem: &AveProblem<T>,
    method: Method,
    alpha: Option<f64>,
    opts: &PicardHssOptions<T>,
) -> Result<SolveStatus> {
    let report = solve_with(problem, method, alpha, opts)?;
    let (_, residual) = problem.ave_residual(&report.x)?;
    let status = report.status;
    let out = SolveOutput {
        method,
        alpha: if method.uses_alpha() { alpha } else { None },
        n: problem.n(),
        residual,
        report,
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(status)
}

/// Runs the solve and maps the outcome to the process exit code:
/// 0 converged, 2 stopped without converging, 1 factorization failure.
pub fn run(
    problem: &LoadedProblem,
    method: Method,
    alpha: Option<f64>,
    tol: f64,
    max_outer: usize,
    eta: f64,
    max_inner: usize,
) -> Result<i32> {
    let status = match problem {
        LoadedProblem::Real(p) => {
            let opts = options(tol, max_outer, eta, max_inner);
            run_generic(p, method, alpha, &opts)?
        }
        LoadedProblem::Complex(p) => {
            let opts = options(tol, max_outer, eta, max_inner);
            run_generic(p, method, alpha, &opts)?
        }
    };
    Ok(match status {
        SolveStatus::Converged => 0,
        SolveStatus::MaxIterations | SolveStatus::Diverged => 2,
        SolveStatus::FactorizationFailure => 1,
    })
}

pub fn options<T: Scalar>(
    tol: f64,
    max_outer: usize,
    eta: f64,
    max_inner: usize,
) -> PicardHssOptions<T> {
    let mut opts = PicardHssOptions::<T>::default();
    opts.base.tol = tol;
    opts.base.max_outer = max_outer;
    opts.base.record_history = true;
    opts.eta = eta;
    opts.max_inner = max_inner;
    opts
}
