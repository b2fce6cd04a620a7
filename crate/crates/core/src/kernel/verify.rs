//! End-to-end decay-rate verification for frequency-localized kernels.

use crate::error::Result;
use crate::grid::{Field, GridSpec};
use crate::kernel::fit::{fit_decay, log_spaced, DecayFit};
use crate::kernel::synth::{KernelSynth, MIN_RADIAL_POINTS};
use crate::norms::mixed_space_norm;
use crate::scalar::Real;
use crate::symbol::Symbol;

/// Which endpoint norm of the kernel is tracked in time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormPair {
    /// `sup_{x,y} |K|`, rate `M/2`.
    SupSup,
    /// `sup_x ||K(x, ., t)||_{L^2_y}`, rate `(M - k)/2`.
    SupL2,
}

impl NormPair {
    pub fn label(&self) -> &'static str {
        match self {
            NormPair::SupSup => "(inf,inf)",
            NormPair::SupL2 => "(inf,2)",
        }
    }
}

/// Fit window, sampling and verdict tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayPolicy {
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
    pub tolerance: f64,
}

impl Default for DecayPolicy {
    fn default() -> Self {
        Self {
            t_min: 4.0,
            t_max: 64.0,
            samples: 16,
            tolerance: 0.15,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecayVerification {
    pub fit: DecayFit,
    /// Predicted exponent `-beta`.
    pub predicted: f64,
    pub samples: Vec<(f64, f64)>,
    pub half_length: f64,
    pub points: usize,
    pub pass: bool,
}

/// Spatial margin kept between the dispersed kernel and the box edge.
pub fn kernel_margin() -> f64 {
    4.0 * MIN_RADIAL_POINTS as f64 * std::f64::consts::PI / 1.5
}

/// Grid large enough that the kernel at `t_max`, travelling at most at the
/// symbol's speed bound, stays a margin away from the periodic images, and
/// fine enough that the Nyquist frequency is at least 2.5.
pub fn auto_grid<T: Real>(symbol: &Symbol<T>, dim: usize, split: usize, t_max: f64) -> Result<GridSpec<T>> {
    let half_length = symbol.speed_bound().to_f64_lossy() * t_max + kernel_margin();
    let needed = 2.5 * 2.0 * half_length / std::f64::consts::PI;
    let points = (needed.ceil() as usize).next_power_of_two().max(512);
    GridSpec::new(dim, split, T::lit(half_length), points)
}

fn measure<T: Real>(k: &Field<T>, pair: NormPair) -> Result<f64> {
    Ok(match pair {
        NormPair::SupSup => k.max_abs().to_f64_lossy(),
        NormPair::SupL2 => mixed_space_norm(k, T::infinity(), T::lit(2.0))?.to_f64_lossy(),
    })
}

fn run<T: Real>(
    synth: &KernelSynth<T>,
    pair: NormPair,
    predicted: f64,
    policy: &DecayPolicy,
) -> Result<DecayVerification> {
    let samples = log_spaced(policy.t_min, policy.t_max, policy.samples)
        .into_iter()
        .map(|t| Ok((t, measure(&synth.kernel(T::lit(t)), pair)?)))
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_decay(&samples)?;
    let pass = (fit.exponent - predicted).abs() <= policy.tolerance;
    Ok(DecayVerification {
        fit,
        predicted,
        samples,
        half_length: synth.grid().half_length().to_f64_lossy(),
        points: synth.grid().points(),
        pass,
    })
}

/// Fits the decay of the full kernel on `grid` against `-beta(r, r_tilde)`
/// at the endpoint pair, with `M` the symbol's declared rank and `k` the
/// grid's split.
pub fn verify_decay_rates<T: Real>(
    symbol: &Symbol<T>,
    grid: &GridSpec<T>,
    pair: NormPair,
    policy: &DecayPolicy,
) -> Result<DecayVerification> {
    let rank = symbol.hessian_rank() as f64;
    let predicted = match pair {
        NormPair::SupSup => -rank / 2.0,
        NormPair::SupL2 => -(symbol.frozen_rank(grid.split()) as f64) / 2.0,
    };
    run(&KernelSynth::new(grid, symbol)?, pair, predicted, policy)
}

/// Fits `sup_x |K~(x, eta, t)|` on the x-block grid against `-(M - k)/2`
/// with `k = eta.len()`.
pub fn verify_partial_decay<T: Real>(
    symbol: &Symbol<T>,
    grid_x: &GridSpec<T>,
    eta: &[T],
    policy: &DecayPolicy,
) -> Result<DecayVerification> {
    let predicted = -(symbol.frozen_rank(eta.len()) as f64) / 2.0;
    run(
        &KernelSynth::partial(grid_x, symbol, eta)?,
        NormPair::SupSup,
        predicted,
        policy,
    )
}
