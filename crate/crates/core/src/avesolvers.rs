//! Iterative solvers for `A x - |x| = b`.
//!
//! Three methods share the residual contract of [`AveProblem::ave_residual`]:
//!
//! * [`picard`] - the fixed-point scheme `A x_{k+1} = |x_k| + b`, one LU
//!   factorization of `A` reused every step.
//! * [`picard_hss`] - the inner-outer scheme: each Picard step is solved
//!   approximately by HSS sweeps that keep `|x_k|` frozen, stopping once the
//!   inner residual has dropped by the factor `eta`.
//! * [`hss_like`] - the monolayer scheme alternating the two shifted solves
//!   while refreshing both `x` and `|x|` at the half-step, plus its
//!   algebraically equivalent residual-updating form
//!   [`hss_like_residual_variant`].

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{AveError, Result};
use crate::linsolve::lu_factor;
use crate::problem::{AveProblem, SolveReport, SolveStatus, DIVERGENCE_RATIO};
use crate::scalar::{real_to_f64, Scalar};
use crate::splitting::{factorize, split, ShiftedFactors};
use crate::vector::Vector;

/// Options common to all AVE solvers.
#[derive(Debug, Clone)]
pub struct AveSolveOptions<T: Scalar> {
    /// Relative residual target for `||A x - |x| - b|| / ||b||`.
    pub tol: f64,
    pub max_outer: usize,
    /// Starting iterate; zero vector when absent.
    pub x0: Option<Vector<T>>,
    /// Keep the full residual history (otherwise only the last value).
    pub record_history: bool,
}

impl<T: Scalar> Default for AveSolveOptions<T> {
    fn default() -> Self {
        AveSolveOptions {
            tol: 1e-5,
            max_outer: 500,
            x0: None,
            record_history: false,
        }
    }
}

impl<T: Scalar> AveSolveOptions<T> {
    fn validate(&self, n: usize) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(AveError::InvalidArgument(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_outer == 0 {
            return Err(AveError::InvalidArgument(
                "max_outer must be at least 1".into(),
            ));
        }
        if let Some(x0) = &self.x0 {
            if x0.len() != n {
                return Err(AveError::DimensionMismatch(format!(
                    "x0 has length {}, expected {}",
                    x0.len(),
                    n
                )));
            }
        }
        Ok(())
    }
}

/// Options for the inner-outer Picard-HSS scheme.
#[derive(Debug, Clone)]
pub struct PicardHssOptions<T: Scalar> {
    pub base: AveSolveOptions<T>,
    /// Inner reduction factor: the inner loop stops once the residual of the
    /// inner linear system has dropped below `eta` times its starting value.
    pub eta: f64,
    /// Hard cap on inner sweeps per outer step.
    pub max_inner: usize,
}

impl<T: Scalar> Default for PicardHssOptions<T> {
    fn default() -> Self {
        PicardHssOptions {
            base: AveSolveOptions::default(),
            eta: 0.1,
            max_inner: 100,
        }
    }
}

impl<T: Scalar> PicardHssOptions<T> {
    fn validate(&self, n: usize) -> Result<()> {
        self.base.validate(n)?;
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(AveError::InvalidArgument(format!(
                "eta must lie in (0, 1), got {}",
                self.eta
            )));
        }
        if self.max_inner == 0 {
            return Err(AveError::InvalidArgument(
                "max_inner must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Solver selector used by the benchmark and tuning layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Picard,
    PicardHss,
    HssLike,
    HssLikeResidual,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Picard => "picard",
            Method::PicardHss => "picard-hss",
            Method::HssLike => "hss-like",
            Method::HssLikeResidual => "hss-like-residual",
        }
    }

    /// Whether the method takes the shift parameter alpha.
    pub fn uses_alpha(&self) -> bool {
        !matches!(self, Method::Picard)
    }
}

impl std::str::FromStr for Method {
    type Err = AveError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "picard" => Ok(Method::Picard),
            "picard-hss" => Ok(Method::PicardHss),
            "hss-like" => Ok(Method::HssLike),
            "hss-like-residual" => Ok(Method::HssLikeResidual),
            other => Err(AveError::InvalidArgument(format!(
                "unknown method '{other}' (expected picard, picard-hss, hss-like or hss-like-residual)"
            ))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Dispatches to the solver named by `method`. `alpha` is required for every
/// method except Picard; `opts.eta`/`opts.max_inner` only affect Picard-HSS.
pub fn solve_with<T: Scalar>(
    p: &AveProblem<T>,
    method: Method,
    alpha: Option<f64>,
    opts: &PicardHssOptions<T>,
) -> Result<SolveReport<T>> {
    match method {
        Method::Picard => picard(p, &opts.base),
        _ => {
            let alpha = alpha.ok_or_else(|| {
                AveError::InvalidArgument(format!("method {method} requires --alpha"))
            })?;
            match method {
                Method::PicardHss => picard_hss(p, alpha, opts),
                Method::HssLike => hss_like(p, alpha, &opts.base),
                Method::HssLikeResidual => hss_like_residual_variant(p, alpha, &opts.base),
                Method::Picard => unreachable!(),
            }
        }
    }
}

/// One step of the outer driver: next iterate plus the inner sweep count
/// (None for monolayer methods).
type StepFn<'a, T> = dyn FnMut(&Vector<T>) -> Result<(Vector<T>, Option<usize>)> + 'a;

/// Shared outer loop: residual bookkeeping, convergence, divergence and
/// iteration-cap handling. The residual is re-evaluated from scratch each
/// pass, so a non-finite iterate surfaces as divergence.
fn drive<T: Scalar>(
    p: &AveProblem<T>,
    opts: &AveSolveOptions<T>,
    start: Instant,
    step: &mut StepFn<'_, T>,
) -> Result<SolveReport<T>> {
    let mut x = opts.x0.clone().unwrap_or_else(|| Vector::zeros(p.n()));
    let mut history: Vec<f64> = Vec::new();
    let mut inner_iterations: Vec<usize> = Vec::new();
    let mut outer = 0;

    let status = loop {
        let (_, rho) = p.ave_residual(&x)?;
        if !opts.record_history {
            history.clear();
        }
        history.push(rho);

        if rho <= opts.tol {
            break SolveStatus::Converged;
        }
        if !rho.is_finite() || rho > DIVERGENCE_RATIO {
            break SolveStatus::Diverged;
        }
        if outer >= opts.max_outer {
            break SolveStatus::MaxIterations;
        }

        let (next, inner) = step(&x)?;
        x = next;
        if let Some(count) = inner {
            inner_iterations.push(count);
        }
        outer += 1;
    };

    let total_iterations = if inner_iterations.is_empty() {
        outer
    } else {
        inner_iterations.iter().sum()
    };
    Ok(SolveReport {
        x,
        status,
        outer_iterations: outer,
        inner_iterations,
        total_iterations,
        residual_history: history,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Picard iteration: `A x_{k+1} = |x_k| + b`, `A` factored once.
pub fn picard<T: Scalar>(p: &AveProblem<T>, opts: &AveSolveOptions<T>) -> Result<SolveReport<T>> {
    opts.validate(p.n())?;
    let start = Instant::now();
    let factor = match lu_factor(p.matrix()) {
        Ok(f) => f,
        Err(_) => {
            let x = opts.x0.clone().unwrap_or_else(|| Vector::zeros(p.n()));
            return Ok(SolveReport::factorization_failure(
                x,
                start.elapsed().as_secs_f64(),
            ));
        }
    };
    let b = p.rhs().clone();
    drive(p, opts, start, &mut |x: &Vector<T>| {
        let mut next = x.abs().add(&b);
        factor.solve_in_place(next.as_mut_slice());
        Ok((next, None))
    })
}

/// One nonlinear HSS-like sweep `psi(x)`: solve
/// `(alpha I + H) x_half = (alpha I - S) x + |x| + b`, then
/// `(alpha I + S) x_next = (alpha I - H) x_half + |x_half| + b`,
/// refreshing both `x` and `|x|` at the half-step.
pub fn hss_like_step<T: Scalar>(
    factors: &ShiftedFactors<T>,
    b: &Vector<T>,
    x: &Vector<T>,
) -> Result<Vector<T>> {
    let n = factors.n();
    if b.len() != n || x.len() != n {
        return Err(AveError::DimensionMismatch(format!(
            "hss_like_step: factors are for n = {}, got |b| = {}, |x| = {}",
            n,
            b.len(),
            x.len()
        )));
    }
    let alpha = factors.alpha_scalar();

    let sx = factors.s().spmv(x)?;
    let absx = x.abs();
    let mut rhs = Vector::zeros(n);
    for i in 0..n {
        rhs[i] = alpha * x[i] - sx[i] + absx[i] + b[i];
    }
    let x_half = factors.solve_hermitian_shift(&rhs)?;

    let hx = factors.h().spmv(&x_half)?;
    let abs_half = x_half.abs();
    for i in 0..n {
        rhs[i] = alpha * x_half[i] - hx[i] + abs_half[i] + b[i];
    }
    factors.solve_skew_shift(&rhs)
}

/// One sweep of the residual-updating form: `r = |x| + b - A x`;
/// `(alpha I + H) v = r`; `x_half = x + v`; recompute `r`;
/// `(alpha I + S) v = r`; `x_next = x_half + v`.
pub fn hss_like_residual_step<T: Scalar>(
    factors: &ShiftedFactors<T>,
    p: &AveProblem<T>,
    x: &Vector<T>,
) -> Result<Vector<T>> {
    let n = factors.n();
    if x.len() != n || p.n() != n {
        return Err(AveError::DimensionMismatch(format!(
            "hss_like_residual_step: factors are for n = {}, got |x| = {}, problem n = {}",
            n,
            x.len(),
            p.n()
        )));
    }
    let (r, _) = p.ave_residual(x)?;
    // ave_residual returns A x - |x| - b; the update uses its negation
    let v = factors.solve_hermitian_shift(&r.scale(-T::one()))?;
    let x_half = x.add(&v);
    let (r, _) = p.ave_residual(&x_half)?;
    let v = factors.solve_skew_shift(&r.scale(-T::one()))?;
    Ok(x_half.add(&v))
}

/// `Ok(None)` means the factorization broke down (reported as a solve
/// status, not an error); other errors propagate.
fn shifted_factors_or_failure<T: Scalar>(
    p: &AveProblem<T>,
    alpha: f64,
) -> Result<Option<ShiftedFactors<T>>> {
    match split(p.matrix()).and_then(|sp| factorize(&sp, alpha)) {
        Ok(f) => Ok(Some(f)),
        Err(AveError::Factorization(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The nonlinear HSS-like iteration `x_{k+1} = psi(x_k)`.
pub fn hss_like<T: Scalar>(
    p: &AveProblem<T>,
    alpha: f64,
    opts: &AveSolveOptions<T>,
) -> Result<SolveReport<T>> {
    opts.validate(p.n())?;
    let start = Instant::now();
    let factors = match shifted_factors_or_failure(p, alpha)? {
        Some(f) => f,
        None => {
            let x = opts.x0.clone().unwrap_or_else(|| Vector::zeros(p.n()));
            return Ok(SolveReport::factorization_failure(
                x,
                start.elapsed().as_secs_f64(),
            ));
        }
    };
    let b = p.rhs().clone();
    drive(p, opts, start, &mut |x: &Vector<T>| {
        Ok((hss_like_step(&factors, &b, x)?, None))
    })
}

/// The residual-updating variant of the HSS-like iteration (algebraically
/// equivalent to [`hss_like`], identical report contract).
pub fn hss_like_residual_variant<T: Scalar>(
    p: &AveProblem<T>,
    alpha: f64,
    opts: &AveSolveOptions<T>,
) -> Result<SolveReport<T>> {
    opts.validate(p.n())?;
    let start = Instant::now();
    let factors = match shifted_factors_or_failure(p, alpha)? {
        Some(f) => f,
        None => {
            let x = opts.x0.clone().unwrap_or_else(|| Vector::zeros(p.n()));
            return Ok(SolveReport::factorization_failure(
                x,
                start.elapsed().as_secs_f64(),
            ));
        }
    };
    drive(p, opts, start, &mut |x: &Vector<T>| {
        Ok((hss_like_residual_step(&factors, p, x)?, None))
    })
}

/// The Picard-HSS iteration: each outer step solves `A z = |x_k| + b` by HSS
/// sweeps with `|x_k|` frozen, starting from `x_k` and stopping once
/// `||(|x_k| + b) - A x_{k,l}|| <= eta * ||(|x_k| + b) - A x_k||`
/// (the inner system's residual has dropped by `eta`), or after `max_inner`
/// sweeps. The first inner sweep always executes. `inner_iterations` records
/// every inner count; `total_iterations` is their sum.
pub fn picard_hss<T: Scalar>(
    p: &AveProblem<T>,
    alpha: f64,
    opts: &PicardHssOptions<T>,
) -> Result<SolveReport<T>> {
    opts.validate(p.n())?;
    let start = Instant::now();
    let factors = match shifted_factors_or_failure(p, alpha)? {
        Some(f) => f,
        None => {
            let x = opts.base.x0.clone().unwrap_or_else(|| Vector::zeros(p.n()));
            return Ok(SolveReport::factorization_failure(
                x,
                start.elapsed().as_secs_f64(),
            ));
        }
    };

    let n = p.n();
    let a = p.matrix();
    let b = p.rhs();
    let alpha_s = factors.alpha_scalar();
    let eta = opts.eta;
    let max_inner = opts.max_inner;

    drive(p, &opts.base, start, &mut |x: &Vector<T>| {
        // frozen right-hand side of the inner linear system A z = c
        let absx = x.abs();
        let c = absx.add(b);
        let ax = a.spmv(x)?;
        let r0 = real_to_f64(c.sub(&ax).norm2());

        let mut xi = x.clone();
        let mut sweeps = 0;
        loop {
            let sx = factors.s().spmv(&xi)?;
            let mut rhs = Vector::zeros(n);
            for i in 0..n {
                rhs[i] = alpha_s * xi[i] - sx[i] + c[i];
            }
            let x_half = factors.solve_hermitian_shift(&rhs)?;
            let hx = factors.h().spmv(&x_half)?;
            for i in 0..n {
                rhs[i] = alpha_s * x_half[i] - hx[i] + c[i];
            }
            xi = factors.solve_skew_shift(&rhs)?;
            sweeps += 1;

            let axi = a.spmv(&xi)?;
            let inner_res = real_to_f64(c.sub(&axi).norm2());
            let reduced = if r0 > 0.0 {
                inner_res <= eta * r0
            } else {
                true
            };
            if reduced || sweeps >= max_inner || !inner_res.is_finite() {
                break;
            }
        }
        Ok((xi, Some(sweeps)))
    })
}
