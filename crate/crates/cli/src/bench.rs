//! `ave bench`: sweep (p, q, m, method) cells and emit CSV / Markdown / JSON.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use ave_core::tuning::{tune_alpha, GridSpec};
use ave_core::{solve_with, Method, SolveStatus};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alpha_table::{lookup, reference_table, AlphaEntry};
use crate::input::spec_problem;
use crate::report::{self, BenchRow};
use crate::solve::options;

fn default_tol() -> f64 {
    1e-5
}
fn default_max_outer() -> usize {
    500
}
fn default_eta() -> f64 {
    0.1
}
fn default_max_inner() -> usize {
    100
}

/// Where each cell's shift parameter comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaSource {
    /// The embedded reference table.
    FromTable,
    /// A tuning sweep per cell (default grid).
    Tuned,
    /// One fixed value for every cell.
    Fixed(f64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchConfig {
    pub p_values: Vec<f64>,
    pub q_values: Vec<f64>,
    pub m_values: Vec<usize>,
    pub methods: Vec<Method>,
    pub alpha_source: AlphaSource,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_outer")]
    pub max_outer: usize,
    #[serde(default = "default_eta")]
    pub eta: f64,
    #[serde(default = "default_max_inner")]
    pub max_inner: usize,
    #[serde(default)]
    pub output: Option<OutputSpec>,
    #[serde(default)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputSpec {
    pub path: PathBuf,
    pub format: report::Format,
}

impl BenchConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let config: BenchConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_values.is_empty() || self.q_values.is_empty() || self.m_values.is_empty() {
            bail!("p_values, q_values and m_values must be nonempty");
        }
        if self.methods.is_empty() {
            bail!("at least one method is required");
        }
        if self.alpha_source == AlphaSource::FromTable {
            // every non-Picard cell must resolve now, not mid-run
            let table = reference_table();
            for &p in &self.p_values {
                for &q in &self.q_values {
                    for &m in &self.m_values {
                        for &method in &self.methods {
                            if method.uses_alpha() {
                                lookup(&table, p, q, m, method)?;
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn run_cell(
    config: &BenchConfig,
    table: &[AlphaEntry],
    p: f64,
    q: f64,
    m: usize,
    method: Method,
) -> BenchRow {
    let mut row = BenchRow {
        p,
        q,
        m,
        method,
        alpha: None,
        status: String::new(),
        outer_iterations: 0,
        inner_mean: None,
        total_iterations: 0,
        res: None,
        res_1e6: None,
        cpu_s: 0.0,
    };

    let problem = match spec_problem(m, q, p) {
        Ok(p) => p,
        Err(e) => {
            row.status = format!("error: {e}");
            return row;
        }
    };
    let opts = options(config.tol, config.max_outer, config.eta, config.max_inner);

    let alpha = if method.uses_alpha() {
        let resolved: Result<f64, String> = match config.alpha_source {
            AlphaSource::Fixed(a) => Ok(a),
            AlphaSource::FromTable => lookup(table, p, q, m, method).map_err(|e| e.to_string()),
            AlphaSource::Tuned => tune_alpha(&problem, method, &GridSpec::default(), &opts)
                .map(|r| r.best_alpha)
                .map_err(|e| e.to_string()),
        };
        match resolved {
            Ok(a) => Some(a),
            Err(e) => {
                row.status = format!("error: {e}");
                return row;
            }
        }
    } else {
        None
    };
    row.alpha = alpha;

    match solve_with(&problem, method, alpha, &opts) {
        Ok(report) => {
            row.status = report.status.as_str().to_string();
            row.outer_iterations = report.outer_iterations;
            row.total_iterations = report.total_iterations;
            row.inner_mean = if report.inner_iterations.is_empty() {
                None
            } else {
                Some(
                    report.inner_iterations.iter().sum::<usize>() as f64
                        / report.inner_iterations.len() as f64,
                )
            };
            row.cpu_s = report.wall_time;
            // the reported residual is always recomputed from the returned x
            if let Ok((_, rho)) = problem.ave_residual(&report.x) {
                if report.status == SolveStatus::Converged || rho.is_finite() {
                    row.res = Some(rho);
                    row.res_1e6 = Some(rho * 1e6);
                }
            }
        }
        Err(e) => {
            row.status = format!("error: {e}");
        }
    }
    row
}

/// Runs the whole sweep; per-cell failures are recorded in their row and do
/// not abort the run.
pub fn run(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    config.validate()?;
    let table = reference_table();
    let cells: Vec<(f64, f64, usize, Method)> = config
        .p_values
        .iter()
        .flat_map(|&p| {
            config.q_values.iter().flat_map(move |&q| {
                config
                    .m_values
                    .iter()
                    .flat_map(move |&m| config.methods.iter().map(move |&mt| (p, q, m, mt)))
            })
        })
        .collect();

    let rows: Vec<BenchRow> = if config.parallel {
        cells
            .par_iter()
            .map(|&(p, q, m, mt)| run_cell(config, &table, p, q, m, mt))
            .collect()
    } else {
        cells
            .iter()
            .map(|&(p, q, m, mt)| run_cell(config, &table, p, q, m, mt))
            .collect()
    };
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> BenchConfig {
        BenchConfig {
            p_values: vec![0.0],
            q_values: vec![100.0],
            m_values: vec![4],
            methods: vec![Method::HssLike, Method::Picard],
            alpha_source: AlphaSource::Fixed(1.0),
            tol: default_tol(),
            max_outer: default_max_outer(),
            eta: default_eta(),
            max_inner: default_max_inner(),
            output: None,
            parallel: false,
        }
    }

    #[test]
    fn fixed_alpha_lands_in_every_row() {
        let rows = run(&tiny_config()).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].alpha, Some(1.0));
        assert_eq!(rows[1].alpha, None); // picard takes no alpha
    }

    #[test]
    fn empty_method_list_rejected() {
        let mut config = tiny_config();
        config.methods.clear();
        assert!(run(&config).is_err());
    }

    #[test]
    fn from_table_requires_known_cells() {
        let mut config = tiny_config();
        config.alpha_source = AlphaSource::FromTable;
        // m = 4 is not part of the reference grid
        assert!(config.validate().is_err());
        config.m_values = vec![10];
        assert!(config.validate().is_ok());
    }

    #[test]
    fn config_json_round_trip() {
        let config = tiny_config();
        let text = serde_json::to_string(&config).unwrap();
        let back: BenchConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back.p_values, config.p_values);
        assert_eq!(back.alpha_source, config.alpha_source);
    }
}
