//! Bessel functions, radial Dunkl transforms and the oscillatory integrals
//! behind Dunkl propagator kernels.
//!
//! Only the product structure of the weight enters, through the homogeneous
//! dimension `N = d + 2 gamma`. This module works in `f64`.
//!
//! Normalization: the radial transform carries `(2 pi)^{N/2}` so that
//! `gamma = 0` reproduces `int f(X) e^{-i X . zeta} dX`. The oscillatory
//! integral carries no constant; at `gamma = 0` the frequency-localized
//! Euclidean kernel is `K(x, t) = (2 pi)^{-d/2} conj(I(t, |x|))`, see
//! [`euclidean_kernel`].

mod bessel;
mod decay;
mod envelope;
mod oscillatory;
mod quadrature;
mod transform;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;

pub use bessel::{
    bessel_j, calibration_table, BesselConstants, BesselEval, BesselJ, Strategy, ASYMPTOTIC_THRESHOLD, HANKEL_TERMS,
    INTEGRAL_ERROR, MAX_ARGUMENT,
};
pub use decay::{predicted_exponent, verify_dunkl_decay, DunklDecay, DunklSample, Regime};
pub use envelope::{default_radii, h_envelope_check, EnvelopeReport, HFunction, MAX_DERIVATIVE, STABILITY_TOLERANCE};
pub use oscillatory::{
    dunkl_oscillatory, OscillatoryIntegral, OscillatoryValue, RadialPhase, ERROR_TARGET, NODE_BUDGET, PANELS_PER_WAVE,
    SUPPORT,
};
pub use quadrature::{panel_integrate, PANEL_NODES};
pub use transform::{
    radial_dunkl_transform, BesselOrder, DunklParams, RadialKernel, RadialTransform, TransformValue, TRUNCATION_LEVEL,
};

/// `K(x, t) = (2 pi)^{-d} int e^{i x . zeta} e^{it phi(|zeta|)} psi(|zeta|) dzeta`
/// evaluated through the radial reduction at `gamma = 0`.
pub fn euclidean_kernel(phase: RadialPhase, dim: usize, x_radius: f64, t: f64) -> Result<Complex64> {
    let v = dunkl_oscillatory(phase, &DunklParams::euclidean(dim), x_radius, t)?;
    Ok(v.value.conj() * (2.0 * PI).powf(-(dim as f64) / 2.0))
}
