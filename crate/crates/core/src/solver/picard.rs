//! Picard iteration `u_{n+1} = N u_n` from the linear flow, measured in the
//! evolution space `L^{q1}_t L^{r1}_x W^{s, r~1}_y`.

use crate::admissibility::PicardExponents;
use crate::error::{Error, Result};
use crate::grid::Field;
use crate::norms::{bessel_potential_y, lebesgue_norm};
use crate::scalar::{Exact, Real};
use crate::symbol::Symbol;

use super::duhamel::{uniform_nodes, Duhamel, EvolutionNorm, MIN_NODES};
use super::nonlinearity::{evaluate_nonlinearity, NonlinearSpec};

/// Evolution-space exponents and the time exponent `beta1` of the
/// contraction estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverExponents<T> {
    pub q1: T,
    pub r1: T,
    pub r_tilde1: T,
    pub s: T,
    pub beta1: T,
}

impl<T: Real> SolverExponents<T> {
    pub fn from_picard<E: Exact>(exps: &PicardExponents<E>, s: E) -> Self {
        let lit = |e: E| T::lit(e.approx());
        Self {
            q1: lit(exps.inv_q1).recip(),
            r1: lit(exps.inv_r1).recip(),
            r_tilde1: lit(exps.inv_rt1).recip(),
            s: lit(s),
            beta1: lit(exps.beta1),
        }
    }

    pub fn norm(&self) -> EvolutionNorm<T> {
        EvolutionNorm {
            q: self.q1,
            r: self.r1,
            r_tilde: self.r_tilde1,
            s: self.s,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PicardConfig<T> {
    /// Uniform time nodes on `[0, T]`, at least 9.
    pub nodes: usize,
    pub max_iters: usize,
    /// Stop once `d(u_n, u_{n+1}) <= tolerance * A`.
    pub tolerance: T,
}

impl<T: Real> Default for PicardConfig<T> {
    fn default() -> Self {
        Self {
            nodes: MIN_NODES,
            max_iters: 40,
            tolerance: T::lit(1e-10),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PicardReport<T: Real> {
    pub horizon: T,
    /// Ball radius `A = 2 ||u_0||_X`.
    pub radius: T,
    /// `||u_n||_X` for `n = 0, 1, ...`.
    pub iterate_norms: Vec<T>,
    /// `d(u_n, u_{n+1})` for `n = 0, 1, ...`.
    pub differences: Vec<T>,
    /// Consecutive ratios `d(u_{n+1}, u_{n+2}) / d(u_n, u_{n+1})`.
    pub ratios: Vec<T>,
    /// Largest consecutive ratio; `None` when no ratio is defined.
    pub rho_hat: Option<T>,
    /// No ratio could be formed because the iteration is stationary from
    /// the start (vanishing data or nonlinearity).
    pub degenerate: bool,
    pub converged: bool,
    /// `rho_hat <= 1/2`, the contraction the existence proof requires.
    pub halving: bool,
    pub iterations: usize,
    pub divergence: Option<(usize, String)>,
    /// `d >= 3` with a two-dimensional `y` block.
    pub in_hypothesis: bool,
    /// Largest over nodes of
    /// `||<nabla_y>^s F(u)||_2 / (||F'(u)||_inf ||<nabla_y>^s u||_2)` at the
    /// final iterate of a converged run.
    pub chain_rule_ratio: Option<T>,
    pub times: Vec<T>,
    /// Final iterate at every node.
    pub solution: Vec<Field<T>>,
}

impl<T: Real> PicardReport<T> {
    /// Whether `d(u_n, u_{n+1})` is non-increasing after the first step.
    pub fn differences_monotone(&self) -> bool {
        self.differences.windows(2).skip(1).all(|w| w[1] <= w[0])
    }
}

fn chain_rule_ratio<T: Real>(u: &[Field<T>], spec: &NonlinearSpec<T>, s: T) -> Result<Option<T>> {
    let two = T::lit(2.0);
    let mut best: Option<T> = None;
    for field in u {
        let lhs = lebesgue_norm(&bessel_potential_y(&evaluate_nonlinearity(field, spec), s), two)?;
        let deriv = field
            .values()
            .iter()
            .fold(T::zero(), |acc, &z| acc.max(spec.derivative_size(z)));
        let rhs = deriv * lebesgue_norm(&bessel_potential_y(field, s), two)?;
        if rhs > T::zero() {
            let r = lhs / rhs;
            best = Some(best.map_or(r, |b| b.max(r)));
        }
    }
    Ok(best)
}

/// Runs the Picard iteration on `[0, horizon]`.
pub fn picard_solve<T: Real>(
    f: &Field<T>,
    symbol: &Symbol<T>,
    spec: &NonlinearSpec<T>,
    exps: &SolverExponents<T>,
    horizon: T,
    config: &PicardConfig<T>,
) -> Result<PicardReport<T>> {
    let times = uniform_nodes(horizon, config.nodes)?;
    let op = Duhamel::new(f, symbol, spec, &times)?;
    let norm = exps.norm();
    let (mut u, norm0) = op.apply_measured(None, 0, &norm)?;
    let radius = T::lit(2.0) * norm0;
    let mut iterate_norms = vec![norm0];
    let mut differences = Vec::new();
    let mut converged = false;
    let mut divergence = None;
    let mut iterations = 0;
    for n in 1..=config.max_iters {
        let (next, next_norm) = match op.apply_measured(Some(&u), n, &norm) {
            Ok(v) => v,
            Err(Error::Divergence { step, reason }) => {
                divergence = Some((step, reason));
                break;
            }
            Err(e) => return Err(e),
        };
        iterations = n;
        let d = norm.distance(&u, &next, &times)?;
        if !d.is_finite() {
            divergence = Some((n, "non-finite successive difference".into()));
            break;
        }
        differences.push(d);
        iterate_norms.push(next_norm);
        u = next;
        if d <= config.tolerance * radius {
            converged = true;
            break;
        }
    }
    let ratios: Vec<T> = differences
        .windows(2)
        .filter(|w| w[0] > T::zero())
        .map(|w| w[1] / w[0])
        .collect();
    let rho_hat = ratios.iter().copied().reduce(T::max);
    let degenerate = rho_hat.is_none() && differences.first().is_some_and(|d| d.is_zero());
    if converged && rho_hat.is_some_and(|r| r >= T::one()) {
        converged = false;
    }
    let halving = match rho_hat {
        Some(r) => r <= T::lit(0.5),
        None => degenerate,
    };
    let chain_rule_ratio = if converged && !degenerate {
        chain_rule_ratio(&u, spec, exps.s)?
    } else {
        None
    };
    let grid = f.grid();
    Ok(PicardReport {
        horizon,
        radius,
        iterate_norms,
        differences,
        ratios,
        rho_hat,
        degenerate,
        converged,
        halving,
        iterations,
        divergence,
        in_hypothesis: grid.dim() >= 3 && grid.split() == 2,
        chain_rule_ratio,
        times,
        solution: u,
    })
}
