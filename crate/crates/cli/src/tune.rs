//! `ave tune`: sweep the shift parameter on one problem.

use anyhow::{bail, Result};
use ave_core::tuning::{tune_alpha, GridSpec, TuneReport};
use ave_core::{AveError, Method};
use serde_json::json;

use crate::input::spec_problem;
use crate::solve::options;

/// Parses either `start:stop:step` or a comma-separated list.
pub fn parse_grid(text: &str) -> Result<GridSpec> {
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            bail!("grid ranges are start:stop:step, got '{text}'");
        }
        let start: f64 = parts[0].parse()?;
        let stop: f64 = parts[1].parse()?;
        let step: f64 = parts[2].parse()?;
        Ok(GridSpec::range(start, stop, step)?)
    } else {
        let alphas: Vec<f64> = text
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()?;
        Ok(GridSpec::new(alphas)?)
    }
}

fn render(report: &TuneReport, csv: bool) -> Result<String> {
    if csv {
        let mut out = String::from("alpha,iterations,wall_time,status\n");
        for run in &report.per_alpha {
            out.push_str(&format!(
                "{},{},{},{}\n",
                run.alpha,
                run.iterations,
                run.wall_time,
                run.status.as_str()
            ));
        }
        out.push_str(&format!("# best_alpha,{}\n", report.best_alpha));
        Ok(out)
    } else {
        Ok(serde_json::to_string_pretty(report)?)
    }
}

#[allow(clippy::too_many_arguments)]
pub fn run(
    m: usize,
    q: f64,
    p: f64,
    method: Method,
    grid: &GridSpec,
    tol: f64,
    max_outer: usize,
    eta: f64,
    max_inner: usize,
    csv: bool,
    out: Option<&std::path::Path>,
) -> Result<i32> {
    let problem = spec_problem(m, q, p)?;
    let opts = options(tol, max_outer, eta, max_inner);
    match tune_alpha(&problem, method, grid, &opts) {
        Ok(report) => {
            let text = render(&report, csv)?;
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Err(AveError::NoConvergentAlpha { per_alpha }) => {
            // still emit the table so the sweep is not lost
            let failed = json!({
                "error": "no alpha in the grid converged",
                "per_alpha": per_alpha,
            });
            println!("{}", serde_json::to_string_pretty(&failed)?);
            Ok(2)
        }
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing_accepts_both_forms() {
        let range = parse_grid("0.5:2.0:0.5").unwrap();
        assert_eq!(range.alphas().len(), 4);
        let list = parse_grid("1.0, 2.0, 3.5").unwrap();
        assert_eq!(list.alphas(), &[1.0, 2.0, 3.5]);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("a,b").is_err());
    }
}
