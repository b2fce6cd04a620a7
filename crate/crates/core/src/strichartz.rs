//! Strichartz quotients `R(f) = ||e^{it Phi(D)} f||_{L^q_t L^r_x L^{r~}_y} / ||f||_{H-dot^s}`
//! for dyadic wave packets, and their behaviour under dyadic dilation.

use num_complex::Complex;

use crate::admissibility::ExponentSelection;
use crate::error::{Error, Result};
use crate::fourier::{centering_sign, forward_transform, inverse_transform_owned};
use crate::grid::{Field, GridSpec, Spectrum};
use crate::littlewood_paley::rescale_field;
use crate::norms::{hdot_norm_spectrum, mixed_space_norm, time_norm};
use crate::propagator::Propagator;
use crate::scalar::{Exact, Real};
use crate::symbol::Symbol;

/// Space-time exponents in floating point; `q = inf` is allowed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrichartzExponents<T> {
    pub q: T,
    pub r: T,
    pub r_tilde: T,
    pub s: T,
}

impl<T: Real> StrichartzExponents<T> {
    pub fn new(q: T, r: T, r_tilde: T, s: T) -> Self {
        Self { q, r, r_tilde, s }
    }

    pub fn from_selection<E: Exact>(sel: &ExponentSelection<E>) -> Self {
        let (q, r, rt) = sel.exponents_f64();
        Self {
            q: T::lit(q),
            r: T::lit(r),
            r_tilde: T::lit(rt),
            s: T::lit(sel.s().approx()),
        }
    }

    /// `m/q + s - (d-k)(1/2 - 1/r) - k(1/2 - 1/r~)`; zero for scale-invariant
    /// selections.
    pub fn scaling_residual(&self, degree: T, dim: usize, split: usize) -> T {
        let half = T::lit(0.5);
        let a = T::from_usize_lossy(dim - split);
        let b = T::from_usize_lossy(split);
        degree / self.q + self.s - a * (half - self.r.recip()) - b * (half - self.r_tilde.recip())
    }
}

/// Gaussian packet concentrated at frequency `2^band * direction`, with
/// frequency width `width * 2^band`, translated by `shift`.
#[derive(Clone, Debug, PartialEq)]
pub struct WavePacket<T> {
    pub band: i32,
    pub direction: Vec<T>,
    pub width: T,
    pub shift: Vec<T>,
}

impl<T: Real> WavePacket<T> {
    /// Coefficients of the packet on `grid`, zero mode removed, normalized so
    /// the sampled field has unit `L^2` norm.
    pub fn spectrum(&self, grid: &GridSpec<T>) -> Result<Spectrum<T>> {
        let d = grid.dim();
        if self.direction.len() != d || self.shift.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: self.direction.len().min(self.shift.len()),
            });
        }
        if !(self.width > T::zero()) {
            return Err(Error::InvalidData(format!(
                "packet width {} must be positive",
                self.width
            )));
        }
        let scale = T::lit(2.0).powi(self.band);
        let sigma = self.width * scale;
        let norm = self.direction.iter().fold(T::zero(), |a, &c| a + c * c).sqrt();
        let center: Vec<T> = self.direction.iter().map(|&c| c / norm * scale).collect();
        let mut coeffs = Vec::with_capacity(grid.len());
        grid.for_each_frequency(|flat, zeta| {
            let mut dist2 = T::zero();
            let mut phase = T::zero();
            for i in 0..d {
                let e = zeta[i] - center[i];
                dist2 += e * e;
                phase -= zeta[i] * self.shift[i];
            }
            let is_zero = zeta.iter().all(|z| z.is_zero());
            let amp = if is_zero {
                T::zero()
            } else {
                (-dist2 / (T::lit(2.0) * sigma * sigma)).exp() * centering_sign(grid, flat)
            };
            coeffs.push(Complex::from_polar(amp, phase));
        });
        let spec = Spectrum::new(grid.clone(), coeffs)?;
        let l2 = spec.l2_norm();
        if !(l2 > T::zero()) {
            return Err(Error::InvalidData("packet vanishes on the lattice".into()));
        }
        let inv = l2.recip();
        Ok(spec.multiply(|_| Complex::new(inv, T::zero())))
    }

    pub fn field(&self, grid: &GridSpec<T>) -> Result<Field<T>> {
        Ok(inverse_transform_owned(self.spectrum(grid)?))
    }
}

/// Time sampling of the flow on `[0, horizon]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeWindow<T> {
    pub horizon: T,
    pub samples: usize,
}

impl<T: Real> TimeWindow<T> {
    pub fn times(&self) -> Vec<T> {
        let last = T::from_usize_lossy(self.samples - 1);
        (0..self.samples)
            .map(|i| self.horizon * T::from_usize_lossy(i) / last)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quotient<T> {
    pub numerator: T,
    pub denominator: T,
    pub ratio: T,
}

/// `R(f)` with the flow sampled uniformly on the window.
pub fn strichartz_quotient<T: Real>(
    f: &Field<T>,
    symbol: &Symbol<T>,
    exps: &StrichartzExponents<T>,
    window: &TimeWindow<T>,
) -> Result<Quotient<T>> {
    if window.samples < 2 {
        return Err(Error::InsufficientData("need at least 2 time samples".into()));
    }
    let prop = Propagator::new(f.grid(), symbol)?;
    let spec = forward_transform(f);
    let denominator = hdot_norm_spectrum(&spec, exps.s);
    if !(denominator > T::zero()) {
        return Err(Error::InvalidData("data has vanishing homogeneous norm".into()));
    }
    let mut samples = Vec::with_capacity(window.samples);
    for t in window.times() {
        let u = inverse_transform_owned(prop.apply_spectrum(&spec, t)?);
        samples.push((t, mixed_space_norm(&u, exps.r, exps.r_tilde)?));
    }
    let numerator = time_norm(&samples, exps.q)?;
    Ok(Quotient {
        numerator,
        denominator,
        ratio: numerator / denominator,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalingCheck<T> {
    pub delta: T,
    pub original: T,
    pub rescaled: T,
    /// `R(f_delta) / R(f)`.
    pub ratio: T,
    /// `delta^{-residual}`, which is `1` for scale-invariant selections.
    pub predicted: T,
}

/// Compares `R(f_delta)` with `R(f)` for `f_delta(X) = f(delta X)`.
///
/// The dilated data lives on the grid with half-length `L / delta` and its
/// flow is sampled on `[0, H / delta^m]`, the image of `[0, H]` under
/// `u_delta(t, X) = u(delta^m t, delta X)`. No interpolation is involved.
pub fn scaling_check<T: Real>(
    f: &Field<T>,
    symbol: &Symbol<T>,
    exps: &StrichartzExponents<T>,
    window: &TimeWindow<T>,
    delta: T,
) -> Result<ScalingCheck<T>> {
    let original = strichartz_quotient(f, symbol, exps, window)?.ratio;
    let f_delta = rescale_field(f, delta)?;
    let scaled_window = TimeWindow {
        horizon: window.horizon / delta.powf(symbol.degree()),
        samples: window.samples,
    };
    let rescaled = strichartz_quotient(&f_delta, symbol, exps, &scaled_window)?.ratio;
    let grid = f.grid();
    let residual = exps.scaling_residual(symbol.degree(), grid.dim(), grid.split());
    Ok(ScalingCheck {
        delta,
        original,
        rescaled,
        ratio: rescaled / original,
        predicted: delta.powf(-residual),
    })
}
