//! Frequency-localized propagator kernels on the periodic lattice.
//!
//! The kernel of `e^{it Phi(D)} P_0` is
//! `K(X, t) = (2 pi)^{-d} int e^{i X.zeta} e^{it Phi(zeta)} psi(|zeta|) dzeta`.
//! With lattice spacing `pi/L` in frequency and the origin at index `n/2` in
//! space, the Riemann sum is `(2L)^{-d}` times an inverse DFT of
//! `(-1)^{sum m} e^{it Phi} psi`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fourier::{centering_sign, inverse_transform_owned};
use crate::grid::{Field, GridSpec, Spectrum};
use crate::littlewood_paley::cutoff;
use crate::scalar::Real;
use crate::symbol::Symbol;

/// Radial lattice points required across the annulus `[1/2, 2]`.
pub const MIN_RADIAL_POINTS: usize = 16;

/// Checks that the frequency lattice resolves `supp psi = [1/2, 2]`.
pub fn check_resolution<T: Real>(grid: &GridSpec<T>) -> Result<()> {
    let step = grid.frequency_step().to_f64_lossy();
    let nyquist = grid.nyquist().to_f64_lossy();
    if nyquist <= 2.0 {
        return Err(Error::InvalidGrid(format!(
            "Nyquist frequency {nyquist:.3} does not cover the annulus edge 2"
        )));
    }
    let points = (1.5 / step).floor() as usize;
    if points < MIN_RADIAL_POINTS {
        return Err(Error::Resolution {
            points,
            required: MIN_RADIAL_POINTS,
        });
    }
    Ok(())
}

fn norm<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, &z| acc + z * z).sqrt()
}

/// Precomputed sparse table of `(index, sign * psi, Phi)` over the support
/// of the cutoff; evaluates `K(., t)` for many `t` at one FFT each.
#[derive(Clone, Debug)]
pub struct KernelSynth<T: Real> {
    grid: GridSpec<T>,
    entries: Vec<(usize, T, T)>,
    scale: T,
}

impl<T: Real> KernelSynth<T> {
    /// Full kernel on `grid`.
    pub fn new(grid: &GridSpec<T>, symbol: &Symbol<T>) -> Result<Self> {
        Self::build(grid, symbol, &[])
    }

    /// Partial kernel `K~(x, eta, t)` on an x-block grid with `eta` frozen.
    pub fn partial(grid_x: &GridSpec<T>, symbol: &Symbol<T>, eta: &[T]) -> Result<Self> {
        let r = norm(eta);
        if r > T::lit(2.0) {
            return Err(Error::FrozenFrequency(r.to_f64_lossy()));
        }
        Self::build(grid_x, symbol, eta)
    }

    fn build(grid: &GridSpec<T>, symbol: &Symbol<T>, eta: &[T]) -> Result<Self> {
        check_resolution(grid)?;
        let mut entries = Vec::new();
        let mut zeta = vec![T::zero(); grid.dim() + eta.len()];
        zeta[grid.dim()..].copy_from_slice(eta);
        let mut bad = None;
        grid.for_each_frequency(|flat, xi| {
            zeta[..xi.len()].copy_from_slice(xi);
            let psi = cutoff(norm(&zeta));
            if psi.is_zero() {
                return;
            }
            let phi = symbol.eval(&zeta);
            if !phi.is_finite() && bad.is_none() {
                bad = Some((zeta.iter().map(|z| z.to_f64_lossy()).collect(), phi.to_f64_lossy()));
            }
            entries.push((flat, psi * centering_sign(grid, flat), phi));
        });
        if let Some((frequency, value)) = bad {
            return Err(Error::SymbolEvaluation { frequency, value });
        }
        let scale = (T::lit(2.0) * grid.half_length()).powi(-(grid.dim() as i32));
        Ok(Self {
            grid: grid.clone(),
            entries,
            scale,
        })
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    /// Discrete `(2 pi)^{-d} ||psi||_{L^1}`; bounds `|K(., t)|` for every `t`.
    pub fn l1_bound(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, &(_, psi, _)| acc + psi.abs()) * self.scale
    }

    pub fn kernel(&self, t: T) -> Field<T> {
        let zero = Complex::new(T::zero(), T::zero());
        let mut coeffs = vec![zero; self.grid.len()];
        for &(flat, psi, phi) in &self.entries {
            let (s, c) = (t * phi).sin_cos();
            coeffs[flat] = Complex::new(c, s) * (psi * self.scale);
        }
        inverse_transform_owned(Spectrum::from_parts(self.grid.clone(), coeffs))
    }
}

/// `K(., t)` for the unit-scale cutoff.
pub fn synthesize_kernel<T: Real>(symbol: &Symbol<T>, t: T, grid: &GridSpec<T>) -> Result<Field<T>> {
    Ok(KernelSynth::new(grid, symbol)?.kernel(t))
}

/// `K~(., eta, t)` on the x-block grid `grid_x` (dimension `d - k`).
pub fn synthesize_partial_kernel<T: Real>(
    symbol: &Symbol<T>,
    t: T,
    eta: &[T],
    grid_x: &GridSpec<T>,
) -> Result<Field<T>> {
    Ok(KernelSynth::partial(grid_x, symbol, eta)?.kernel(t))
}
