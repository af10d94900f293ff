//! `ave` - generate, solve, benchmark and verify absolute value equation
//! problems.
//!
//! Exit codes: 0 success, 1 usage/internal/factorization error, 2 a solve or
//! tuning sweep that stopped without converging.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use ave_cli::{alpha_table, bench, gen, input, oracle_check, report, solve, tune};
use ave_core::Method;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "ave",
    about = "Solvers and benchmarks for the absolute value equation A x - |x| = b",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SolverFlags {
    /// Relative residual tolerance.
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    /// Outer iteration cap.
    #[arg(long, default_value_t = 500)]
    max_outer: usize,
    /// Inner reduction factor for picard-hss.
    #[arg(long, default_value_t = 0.1)]
    eta: f64,
    /// Inner sweep cap per outer step for picard-hss.
    #[arg(long, default_value_t = 100)]
    max_inner: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a convection-diffusion problem and write it to a directory.
    Gen {
        /// Grid points per dimension (matrix order is m^2).
        #[arg(long)]
        m: usize,
        /// Convection magnitude.
        #[arg(long, default_value_t = 0.0)]
        q: f64,
        /// Diagonal shift.
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve one problem and print the report as JSON.
    Solve {
        /// Grid points per dimension of the generated problem.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0.0)]
        q: f64,
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        /// Matrix Market file (alternative to --m).
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Right-hand-side vector file.
        #[arg(long)]
        rhs: Option<PathBuf>,
        /// Known exact solution (optional, validated on load).
        #[arg(long)]
        exact: Option<PathBuf>,
        #[arg(long)]
        method: Method,
        /// Shift parameter; required by every method except picard.
        #[arg(long)]
        alpha: Option<f64>,
        /// Take alpha from the embedded reference table instead.
        #[arg(long, conflicts_with = "alpha")]
        alpha_table: bool,
        #[command(flatten)]
        solver: SolverFlags,
    },
    /// Sweep (p, q, m, method) cells and emit a benchmark report.
    Bench {
        /// JSON config file; flags below are ignored when present.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0,1,10,100")]
        q: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "10,20,40")]
        m: Vec<usize>,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "hss-like,picard-hss,picard"
        )]
        method: Vec<Method>,
        /// Fixed alpha for every cell (default: the embedded reference table).
        #[arg(long)]
        alpha: Option<f64>,
        /// Tune alpha per cell instead of using the reference table.
        #[arg(long, conflicts_with = "alpha")]
        tuned: bool,
        #[command(flatten)]
        solver: SolverFlags,
        /// Output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: report::Format,
        /// Run benchmark cells concurrently (per-row timings then overlap).
        #[arg(long)]
        parallel: bool,
    },
    /// Grid-search the shift parameter on one generated problem.
    Tune {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.0)]
        q: f64,
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        #[arg(long, default_value = "hss-like")]
        method: Method,
        /// Either start:stop:step or a comma-separated list.
        #[arg(long, default_value = "0.1:4.0:0.1")]
        grid: String,
        #[command(flatten)]
        solver: SolverFlags,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Enumerate all solutions of a small real problem by sign patterns.
    OracleCheck {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        /// Enumeration size cap (2^n solves).
        #[arg(long, default_value_t = 20)]
        n_limit: usize,
    },
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen { m, q, p, out } => {
            gen::run(m, q, p, &out)?;
            Ok(0)
        }
        Command::Solve {
            m,
            q,
            p,
            matrix,
            rhs,
            exact,
            method,
            alpha,
            alpha_table,
            solver,
        } => {
            let alpha = if alpha_table {
                let m = match m {
                    Some(m) => m,
                    None => bail!("--alpha-table requires a generated problem (--m/--q/--p)"),
                };
                Some(alpha_table::lookup(
                    &alpha_table::reference_table(),
                    p,
                    q,
                    m,
                    method,
                )?)
            } else {
                alpha
            };
            let problem = input::resolve_problem(
                m,
                q,
                p,
                matrix.as_deref(),
                rhs.as_deref(),
                exact.as_deref(),
            )?;
            solve::run(
                &problem,
                method,
                alpha,
                solver.tol,
                solver.max_outer,
                solver.eta,
                solver.max_inner,
            )
        }
        Command::Bench {
            config,
            p,
            q,
            m,
            method,
            alpha,
            tuned,
            solver,
            out,
            format,
            parallel,
        } => {
            let config = match config {
                Some(path) => bench::BenchConfig::load(&path)?,
                None => bench::BenchConfig {
                    p_values: p,
                    q_values: q,
                    m_values: m,
                    methods: method,
                    alpha_source: if tuned {
                        bench::AlphaSource::Tuned
                    } else if let Some(a) = alpha {
                        bench::AlphaSource::Fixed(a)
                    } else {
                        bench::AlphaSource::FromTable
                    },
                    tol: solver.tol,
                    max_outer: solver.max_outer,
                    eta: solver.eta,
                    max_inner: solver.max_inner,
                    output: out.map(|path| bench::OutputSpec { path, format }),
                    parallel,
                },
            };
            let rows = bench::run(&config)?;
            if config.parallel {
                eprintln!("note: cells ran concurrently; per-row cpu_s values overlap in wall time");
            }
            let (target, fmt) = match &config.output {
                Some(spec) => (Some(spec.path.clone()), spec.format),
                None => (None, format),
            };
            let text = report::render(&rows, fmt)?;
            match target {
                Some(path) => {
                    std::fs::write(&path, &text)?;
                    eprintln!("wrote {} rows to {}", rows.len(), path.display());
                }
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Tune {
            m,
            q,
            p,
            method,
            grid,
            solver,
            out,
            format,
        } => {
            let grid = tune::parse_grid(&grid)?;
            let csv = match format.as_str() {
                "csv" => true,
                "json" => false,
                other => bail!("unknown format '{other}' (expected csv or json)"),
            };
            tune::run(
                m,
                q,
                p,
                method,
                &grid,
                solver.tol,
                solver.max_outer,
                solver.eta,
                solver.max_inner,
                csv,
                out.as_deref(),
            )
        }
        Command::OracleCheck {
            matrix,
            rhs,
            n_limit,
        } => oracle_check::run(&matrix, &rhs, n_limit),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
