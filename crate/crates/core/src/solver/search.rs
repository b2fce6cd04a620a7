//! Existence-time search over dyadic horizons and the horizon-scaling check
//! of the contraction factor.

use crate::error::{Error, Result};
use crate::grid::Field;
use crate::scalar::Real;
use crate::symbol::Symbol;

use super::nonlinearity::NonlinearSpec;
use super::picard::{picard_solve, PicardConfig, PicardReport, SolverExponents};

/// Dyadic horizons `2^j` with `j` in this range are probed.
pub const SEARCH_EXPONENTS: (i32, i32) = (-12, 4);
pub const MAX_PROBES: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct Probe<T> {
    pub exponent: i32,
    pub horizon: T,
    /// Converged with `rho_hat <= 1/2`, or degenerate.
    pub accepted: bool,
    pub converged: bool,
    pub rho_hat: Option<T>,
    pub iterations: usize,
    pub divergence: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ExistenceSearch<T: Real> {
    /// Largest accepted dyadic horizon, or `None` when none was found.
    pub t_star: Option<T>,
    pub probes: Vec<Probe<T>>,
    /// The run at `t_star`.
    pub report: Option<PicardReport<T>>,
}

fn accepted<T: Real>(rep: &PicardReport<T>) -> bool {
    rep.converged && rep.halving
}

/// Bisection over dyadic exponents, assuming acceptance is monotone in the
/// horizon. The top of the range is tried first, then the bottom.
pub fn existence_time_search<T: Real>(
    f: &Field<T>,
    symbol: &Symbol<T>,
    spec: &NonlinearSpec<T>,
    exps: &SolverExponents<T>,
    config: &PicardConfig<T>,
) -> Result<ExistenceSearch<T>> {
    let mut probes = Vec::new();
    let mut best: Option<(i32, PicardReport<T>)> = None;
    let mut run = |j: i32, probes: &mut Vec<Probe<T>>| -> Result<bool> {
        let horizon = T::lit(2f64.powi(j));
        let rep = picard_solve(f, symbol, spec, exps, horizon, config)?;
        let ok = accepted(&rep);
        probes.push(Probe {
            exponent: j,
            horizon,
            accepted: ok,
            converged: rep.converged,
            rho_hat: rep.rho_hat,
            iterations: rep.iterations,
            divergence: rep.divergence.as_ref().map(|d| d.1.clone()),
        });
        if ok && best.as_ref().is_none_or(|(b, _)| j > *b) {
            best = Some((j, rep));
        }
        Ok(ok)
    };
    let (mut lo, mut hi) = SEARCH_EXPONENTS;
    if !run(hi, &mut probes)? {
        if run(lo, &mut probes)? {
            while hi - lo > 1 && probes.len() < MAX_PROBES {
                let mid = (lo + hi).div_euclid(2);
                if run(mid, &mut probes)? {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
    }
    let (t_star, report) = match best {
        Some((_, rep)) => (Some(rep.horizon), Some(rep)),
        None => (None, None),
    };
    Ok(ExistenceSearch { t_star, probes, report })
}

/// `rho_hat` at `T` and `T/2` against the law `rho ~ T^{beta1}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorizonScaling<T> {
    pub horizon: T,
    pub rho: T,
    pub rho_half: T,
    /// `log2(rho(T) / rho(T/2))`.
    pub measured: T,
    pub beta1: T,
    pub margin: T,
    /// `measured >= (1 - margin) beta1`.
    pub pass: bool,
}

pub fn horizon_scaling_check<T: Real>(
    f: &Field<T>,
    symbol: &Symbol<T>,
    spec: &NonlinearSpec<T>,
    exps: &SolverExponents<T>,
    horizon: T,
    config: &PicardConfig<T>,
    margin: T,
) -> Result<HorizonScaling<T>> {
    let rho_at = |t: T| -> Result<T> {
        let rep = picard_solve(f, symbol, spec, exps, t, config)?;
        rep.rho_hat
            .ok_or_else(|| Error::InsufficientData(format!("no contraction factor at horizon {t}")))
    };
    let rho = rho_at(horizon)?;
    let rho_half = rho_at(horizon / T::lit(2.0))?;
    let measured = (rho / rho_half).log2();
    Ok(HorizonScaling {
        horizon,
        rho,
        rho_half,
        measured,
        beta1: exps.beta1,
        margin,
        pass: measured >= (T::one() - margin) * exps.beta1,
    })
}
