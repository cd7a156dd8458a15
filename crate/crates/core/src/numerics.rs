//! Root finding, small nonlinear systems and comparative statics.
//!
//! Every equilibrium in the model is an intersection of monotone schedules,
//! so the one-dimensional solver is a bracketing method: plain bisection by
//! default, with an Illinois (secant) variant when speed matters. Two-variable
//! systems use a damped Newton iteration with a finite-difference Jacobian and
//! can fall back to nested bisection when the Jacobian degenerates.

use thiserror::Error;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::state::StateVector;

pub const DEFAULT_TOL_F: f64 = 1e-10;
pub const DEFAULT_TOL_X: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("invalid bracket: {0}")]
    InvalidBracket(String),
    #[error("f does not change sign on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NonBracketing {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("singular Jacobian at ({x}, {y})")]
    SingularJacobian { x: f64, y: f64 },
    #[error("function is not finite at {0}")]
    NotFinite(f64),
}

/// Search interval and stopping rules for a one-dimensional root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub tol_x: f64,
    pub tol_f: f64,
    pub max_iter: usize,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            tol_x: DEFAULT_TOL_X,
            tol_f: DEFAULT_TOL_F,
            max_iter: DEFAULT_MAX_ITER,
        }
    }

    pub fn tol_x(mut self, tol: f64) -> Self {
        self.tol_x = tol;
        self
    }

    pub fn tol_f(mut self, tol: f64) -> Self {
        self.tol_f = tol;
        self
    }

    pub fn max_iter(mut self, n: usize) -> Self {
        self.max_iter = n;
        self
    }

    fn check(&self) -> Result<(), SolveError> {
        if !(self.lo < self.hi) {
            return Err(SolveError::InvalidBracket(format!(
                "lo = {} must be below hi = {}",
                self.lo, self.hi
            )));
        }
        if !(self.tol_x > 0.0 && self.tol_f > 0.0) {
            return Err(SolveError::InvalidBracket(
                "tolerances must be positive".into(),
            ));
        }
        if self.max_iter == 0 {
            return Err(SolveError::InvalidBracket(
                "max_iter must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Worst-case bisection iteration count, `ceil(log2((hi - lo) / tol_x))`.
    pub fn bisection_bound(&self) -> usize {
        ((self.hi - self.lo) / self.tol_x).log2().ceil().max(0.0) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveReport<T> {
    pub root: T,
    /// Largest absolute residual component at `root`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Bisection,
    /// Regula falsi with the Illinois modification; always keeps a sign-changing bracket.
    Illinois,
}

/// Finds a root of `f` in `bracket` by bisection.
///
/// The bracket is narrowed below `tol_x` and the best point is accepted only
/// if `|f| < tol_f`, so the reported root does not depend on the method.
pub fn find_root<F>(f: F, bracket: Bracket) -> Result<SolveReport<f64>, SolveError>
where
    F: FnMut(f64) -> f64,
{
    find_root_with(f, bracket, Method::Bisection)
}

pub fn find_root_with<F>(
    mut f: F,
    bracket: Bracket,
    method: Method,
) -> Result<SolveReport<f64>, SolveError>
where
    F: FnMut(f64) -> f64,
{
    bracket.check()?;
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if !f_lo.is_finite() {
        return Err(SolveError::NotFinite(lo));
    }
    if !f_hi.is_finite() {
        return Err(SolveError::NotFinite(hi));
    }
    if f_lo == 0.0 {
        return Ok(done(lo, f_lo, 0, bracket.tol_f));
    }
    if f_hi == 0.0 {
        return Ok(done(hi, f_hi, 0, bracket.tol_f));
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(SolveError::NonBracketing { lo, hi, f_lo, f_hi });
    }

    // Illinois bookkeeping: which end was retained last step, and how many
    // steps in a row failed to halve the bracket.
    let mut side = 0i8;
    let mut stalls = 0u8;
    for iter in 1..=bracket.max_iter {
        let width = hi - lo;
        let x = match method {
            Method::Illinois if stalls < 2 => {
                let x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
                if x > lo && x < hi {
                    x
                } else {
                    lo + 0.5 * width
                }
            }
            _ => lo + 0.5 * width,
        };
        let fx = f(x);
        if !fx.is_finite() {
            return Err(SolveError::NotFinite(x));
        }
        if fx == 0.0 {
            return Ok(done(x, fx, iter, bracket.tol_f));
        }
        // Adjacent floats: the bracket cannot shrink any further.
        let exhausted = x <= lo || x >= hi;
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            f_hi = fx;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        }
        stalls = if hi - lo > 0.5 * width { stalls + 1 } else { 0 };
        // Illinois scaling distorts the stored end values; re-evaluate before reporting.
        if hi - lo < bracket.tol_x || exhausted {
            let (root, fr) = best_end(&mut f, lo, hi);
            if fr.abs() < bracket.tol_f {
                return Ok(done(root, fr, iter, bracket.tol_f));
            }
            return Err(SolveError::NoConvergence {
                iterations: iter,
                residual: fr.abs(),
            });
        }
    }
    let (_, fr) = best_end(&mut f, lo, hi);
    Err(SolveError::NoConvergence {
        iterations: bracket.max_iter,
        residual: fr.abs(),
    })
}

fn best_end<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> (f64, f64) {
    let mid = lo + 0.5 * (hi - lo);
    [lo, mid, hi]
        .into_iter()
        .map(|x| (x, f(x)))
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .unwrap_or((mid, f64::NAN))
}

fn done(root: f64, fx: f64, iterations: usize, tol_f: f64) -> SolveReport<f64> {
    SolveReport {
        root,
        residual: fx.abs(),
        iterations,
        converged: fx.abs() < tol_f,
    }
}

/// Options for [`solve_2d`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Newton2d {
    pub tol_f: f64,
    pub max_iter: usize,
    /// Brackets for the nested-bisection fallback: `x` is the outer variable,
    /// `y` is solved from the second equation for each trial `x`.
    pub fallback: Option<(Bracket, Bracket)>,
}

impl Default for Newton2d {
    fn default() -> Self {
        Self {
            tol_f: DEFAULT_TOL_F,
            max_iter: DEFAULT_MAX_ITER,
            fallback: None,
        }
    }
}

/// Solves `F(x, y) = (0, 0)` starting from `start`.
pub fn solve_2d<F>(
    f: F,
    start: (f64, f64),
    opts: Newton2d,
) -> Result<SolveReport<(f64, f64)>, SolveError>
where
    F: Fn(f64, f64) -> (f64, f64),
{
    match newton_2d(&f, start, &opts) {
        Ok(report) => Ok(report),
        Err(err @ (SolveError::SingularJacobian { .. } | SolveError::NoConvergence { .. })) => {
            match opts.fallback {
                Some((outer, inner)) => nested_bisection(&f, outer, inner),
                None => Err(err),
            }
        }
        Err(err) => Err(err),
    }
}

fn norm((a, b): (f64, f64)) -> f64 {
    a.abs().max(b.abs())
}

fn newton_2d<F>(
    f: &F,
    start: (f64, f64),
    opts: &Newton2d,
) -> Result<SolveReport<(f64, f64)>, SolveError>
where
    F: Fn(f64, f64) -> (f64, f64),
{
    let (mut x, mut y) = start;
    let mut fx = f(x, y);
    if !(fx.0.is_finite() && fx.1.is_finite()) {
        return Err(SolveError::NotFinite(x));
    }
    for iter in 0..opts.max_iter {
        let r = norm(fx);
        if r < opts.tol_f {
            return Ok(SolveReport {
                root: (x, y),
                residual: r,
                iterations: iter,
                converged: true,
            });
        }
        // Central-difference Jacobian.
        let hx = 1e-6 * x.abs().max(1.0);
        let hy = 1e-6 * y.abs().max(1.0);
        let (fxp, fxm) = (f(x + hx, y), f(x - hx, y));
        let (fyp, fym) = (f(x, y + hy), f(x, y - hy));
        let j11 = (fxp.0 - fxm.0) / (2.0 * hx);
        let j21 = (fxp.1 - fxm.1) / (2.0 * hx);
        let j12 = (fyp.0 - fym.0) / (2.0 * hy);
        let j22 = (fyp.1 - fym.1) / (2.0 * hy);
        let det = j11 * j22 - j12 * j21;
        let scale = (j11.abs() + j12.abs()) * (j21.abs() + j22.abs());
        if !det.is_finite() || det.abs() <= 1e-12 * scale || scale == 0.0 {
            return Err(SolveError::SingularJacobian { x, y });
        }
        let dx = -(j22 * fx.0 - j12 * fx.1) / det;
        let dy = -(-j21 * fx.0 + j11 * fx.1) / det;

        // Backtracking: accept the first step that reduces the residual.
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let (nx, ny) = (x + step * dx, y + step * dy);
            let nf = f(nx, ny);
            if nf.0.is_finite() && nf.1.is_finite() && norm(nf) < r {
                x = nx;
                y = ny;
                fx = nf;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            return Err(SolveError::NoConvergence {
                iterations: iter,
                residual: r,
            });
        }
    }
    let r = norm(fx);
    if r < opts.tol_f {
        return Ok(SolveReport {
            root: (x, y),
            residual: r,
            iterations: opts.max_iter,
            converged: true,
        });
    }
    Err(SolveError::NoConvergence {
        iterations: opts.max_iter,
        residual: r,
    })
}

fn nested_bisection<F>(
    f: &F,
    outer: Bracket,
    inner: Bracket,
) -> Result<SolveReport<(f64, f64)>, SolveError>
where
    F: Fn(f64, f64) -> (f64, f64),
{
    let inner_root = |x: f64| find_root(|y| f(x, y).1, inner).map(|r| r.root);
    let mut failure = None;
    let report = find_root(
        |x| match inner_root(x) {
            Ok(y) => f(x, y).0,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        outer,
    );
    let report = match (report, failure) {
        (Ok(r), _) => r,
        (Err(_), Some(e)) => return Err(e),
        (Err(e), None) => return Err(e),
    };
    let y = inner_root(report.root)?;
    let residual = norm(f(report.root, y));
    Ok(SolveReport {
        root: (report.root, y),
        residual,
        iterations: report.iterations,
        converged: residual < outer.tol_f.max(inner.tol_f),
    })
}

/// Central-difference sensitivity of every output of `solve` to one parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct Sensitivities {
    pub field: String,
    pub h: f64,
    pub derivatives: Vec<(&'static str, f64)>,
}

impl Sensitivities {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.derivatives
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
    }
}

pub fn comparative_static<S, F>(
    solve: F,
    base: &Params,
    field: &str,
    h: f64,
) -> Result<Sensitivities>
where
    S: StateVector,
    F: Fn(&Params) -> Result<S>,
{
    if h == 0.0 || !h.is_finite() {
        return Err(Error::domain(
            "comparative_static",
            "step h must be finite and nonzero",
        ));
    }
    let x0 = base
        .get(field)
        .ok_or_else(|| Error::UnknownField(field.to_string()))?;
    let up = solve(&base.with(field, x0 + h)?)?;
    let down = solve(&base.with(field, x0 - h)?)?;
    let derivatives = up
        .names()
        .into_iter()
        .zip(up.values().into_iter().zip(down.values()))
        .map(|(name, (u, d))| (name, (u - d) / (2.0 * h)))
        .collect();
    Ok(Sensitivities {
        field: field.to_string(),
        h,
        derivatives,
    })
}

/// One-sided response `solve(p + delta) - solve(p)` of every output.
pub fn response<S, F>(
    solve: F,
    base: &Params,
    field: &str,
    delta: f64,
) -> Result<Vec<(&'static str, f64)>>
where
    S: StateVector,
    F: Fn(&Params) -> Result<S>,
{
    let x0 = base
        .get(field)
        .ok_or_else(|| Error::UnknownField(field.to_string()))?;
    let before = solve(base)?;
    let after = solve(&base.with(field, x0 + delta)?)?;
    Ok(after
        .names()
        .into_iter()
        .zip(after.values().into_iter().zip(before.values()))
        .map(|(name, (a, b))| (name, a - b))
        .collect())
}
