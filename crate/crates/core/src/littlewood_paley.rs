//! Smooth dyadic frequency localization.
//!
//! The cutoff is `psi(rho) = theta(rho) - theta(2 rho)` with the smooth step
//! `theta(rho) = g(2 - rho) / (g(2 - rho) + g(rho - 1))`, `g(s) = e^{-1/s}`
//! for `s > 0` and `0` otherwise. `theta` is exactly `1` on `[0, 1]` and
//! exactly `0` on `[2, inf)`, so `psi` is supported in `[1/2, 2]` and the
//! dyadic sum `sum_j psi(2^{-j} rho)` telescopes to `1` for every `rho` in
//! `[2^{j_min}, 2^{j_max}]`.

use crate::error::{Error, Result};
use crate::fourier::{forward_transform, inverse_transform};
use crate::grid::{Field, GridSpec, Spectrum};
use crate::scalar::Real;

fn g<T: Real>(s: T) -> T {
    if s > T::zero() {
        (-s.recip()).exp()
    } else {
        T::zero()
    }
}

/// Smooth step: `1` on `[0, 1]`, `0` on `[2, inf)`.
pub fn smooth_step<T: Real>(rho: T) -> T {
    let a = g(T::lit(2.0) - rho);
    let b = g(rho - T::one());
    if b.is_zero() {
        T::one()
    } else {
        a / (a + b)
    }
}

/// Unit-scale annular cutoff `psi`, supported in `[1/2, 2]`.
pub fn cutoff<T: Real>(rho: T) -> T {
    smooth_step(rho) - smooth_step(T::lit(2.0) * rho)
}

/// `psi_j(rho) = psi(2^{-j} rho)`.
pub fn dyadic_cutoff<T: Real>(j: i32, rho: T) -> T {
    cutoff(rho * T::lit(2.0).powi(-j))
}

fn radius<T: Real>(zeta: &[T]) -> T {
    zeta.iter().fold(T::zero(), |acc, &z| acc + z * z).sqrt()
}

/// Dyadic index range `[j_min, j_max]` of a Littlewood-Paley decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LpStack {
    j_min: i32,
    j_max: i32,
}

impl LpStack {
    pub fn new(j_min: i32, j_max: i32) -> Result<Self> {
        if j_min > j_max {
            return Err(Error::OutOfRange {
                index: j_min,
                min: j_min,
                max: j_max,
            });
        }
        Ok(Self { j_min, j_max })
    }

    /// Smallest stack whose partition of unity covers every nonzero lattice
    /// frequency of `grid`.
    pub fn for_grid<T: Real>(grid: &GridSpec<T>) -> Self {
        let (j_min, j_max) = representable_range(grid);
        Self { j_min, j_max }
    }

    pub fn j_min(&self) -> i32 {
        self.j_min
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    pub fn indices(&self) -> impl Iterator<Item = i32> {
        self.j_min..=self.j_max
    }

    /// `sum_j psi_j(rho)` over the stack.
    pub fn partition<T: Real>(&self, rho: T) -> T {
        self.indices().fold(T::zero(), |acc, j| acc + dyadic_cutoff(j, rho))
    }

    /// `sum_j psi_j(rho)^2` over the stack.
    pub fn square_sum<T: Real>(&self, rho: T) -> T {
        self.indices().fold(T::zero(), |acc, j| {
            let v = dyadic_cutoff::<T>(j, rho);
            acc + v * v
        })
    }
}

/// Dyadic indices whose annulus meets the nonzero lattice frequencies.
pub fn representable_range<T: Real>(grid: &GridSpec<T>) -> (i32, i32) {
    let lo = grid.frequency_step().log2().floor().to_f64_lossy() as i32;
    let hi = grid.max_frequency().log2().ceil().to_f64_lossy() as i32;
    (lo, hi)
}

fn check_index<T: Real>(grid: &GridSpec<T>, j: i32, stack: &LpStack) -> Result<()> {
    let (lo, hi) = representable_range(grid);
    let min = lo.max(stack.j_min);
    let max = hi.min(stack.j_max);
    if j < min || j > max {
        return Err(Error::OutOfRange { index: j, min, max });
    }
    Ok(())
}

/// Table of `psi_j` on the grid's frequency lattice, storage order.
pub fn cutoff_table<T: Real>(grid: &GridSpec<T>, j: i32) -> Vec<T> {
    let mut table = Vec::with_capacity(grid.len());
    grid.for_each_frequency(|_, zeta| table.push(dyadic_cutoff(j, radius(zeta))));
    table
}

/// `P_j` applied to coefficients.
pub fn lp_project_spectrum<T: Real>(spectrum: &Spectrum<T>, j: i32, stack: &LpStack) -> Result<Spectrum<T>> {
    check_index(spectrum.grid(), j, stack)?;
    spectrum.multiply_table(&cutoff_table(spectrum.grid(), j))
}

/// `P_j f`: multiplies the spectrum of `f` by `psi(2^{-j} |zeta|)`.
pub fn lp_project<T: Real>(f: &Field<T>, j: i32, stack: &LpStack) -> Result<Field<T>> {
    let spec = lp_project_spectrum(&forward_transform(f), j, stack)?;
    Ok(inverse_transform(&spec))
}

/// Extreme values of `sum_j psi_j(rho)^2` over one dyadic period, by dense
/// sampling of `rho` in `[1, 2]`. The best square-function constant for the
/// cutoff is `1 / min`.
pub fn square_function_bounds(samples: usize) -> (f64, f64) {
    // Scale invariance: one period of rho covers every configuration.
    let stack = LpStack { j_min: -2, j_max: 3 };
    (0..=samples)
        .map(|i| 2f64.powf(i as f64 / samples as f64))
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), rho| {
            let v = stack.square_sum(rho);
            (lo.min(v), hi.max(v))
        })
}

/// Dyadic dilation `f_delta(X) = f(delta X)` for `delta = 2^j`.
///
/// The lattice values are unchanged and the box half-length becomes
/// `L / delta`: site `X'_i = X_i / delta` of the new grid carries
/// `f(delta X'_i) = f(X_i)`, so no interpolation occurs. Amplitude
/// prefactors are left to the caller.
pub fn rescale_field<T: Real>(f: &Field<T>, delta: T) -> Result<Field<T>> {
    let exponent = delta.log2();
    let delta_f = delta.to_f64_lossy();
    if !(delta > T::zero()) || !exponent.is_finite() || exponent.fract() != T::zero() {
        return Err(Error::UnsupportedScale(delta_f));
    }
    let grid = f.grid().with_half_length(f.grid().half_length() / delta)?;
    f.clone().regrid(grid)
}
