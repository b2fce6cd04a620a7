//! The Bessel envelope function
//! `h(r) = -i int_0^inf e^{-rt} (t^2 - 2it)^{(d-3)/2} dt`
//! and its derivatives.
//!
//! With `t = u / r` and `a = (d - 3)/2`,
//! `h^(b)(r) = -i (-1)^b r^{-1-a-b} int_0^inf e^{-u} u^{a+b} (u/r - 2i)^a du`,
//! which is evaluated by generalized Gauss-Laguerre quadrature with weight
//! `u^{a+b} e^{-u}`. Derivatives are taken under the integral sign, so the
//! endpoint singularity for `d = 2` sits in the weight.

use std::num::NonZeroUsize;

use gauss_quad::GaussLaguerre;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_NODES: usize = 64;
pub const MAX_DERIVATIVE: usize = 4;
/// Relative change of the envelope constant allowed under node doubling.
pub const STABILITY_TOLERANCE: f64 = 0.01;

/// Laguerre rule for fixed `(d, beta)`.
pub struct HFunction {
    dim: usize,
    beta: usize,
    alpha: f64,
    rule: Vec<(f64, f64)>,
}

impl HFunction {
    pub fn new(dim: usize, beta: usize, nodes: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Integrability(format!(
                "the defining integral diverges at t = 0 for d = {dim} < 2"
            )));
        }
        if beta > MAX_DERIVATIVE {
            return Err(Error::Domain(format!(
                "derivative order {beta} exceeds {MAX_DERIVATIVE}"
            )));
        }
        let alpha = (dim as f64 - 3.0) / 2.0;
        let weight_exp = (alpha + beta as f64)
            .try_into()
            .map_err(|_| Error::Domain(format!("Laguerre exponent {}", alpha + beta as f64)))?;
        let n = NonZeroUsize::new(nodes).ok_or_else(|| Error::InsufficientData("zero nodes".into()))?;
        let rule = GaussLaguerre::new(n, weight_exp).as_node_weight_pairs().to_vec();
        Ok(Self { dim, beta, alpha, rule })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn derivative_order(&self) -> usize {
        self.beta
    }

    /// `h^(beta)(r)` for `r > 0`.
    pub fn eval(&self, r: f64) -> Result<Complex64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("h is evaluated at r > 0, got {r}")));
        }
        let two_i = Complex64::new(0.0, 2.0);
        let sum: Complex64 = self
            .rule
            .iter()
            .map(|&(u, w)| (Complex64::new(u / r, 0.0) - two_i).powf(self.alpha) * w)
            .sum();
        let sign = if self.beta.is_multiple_of(2) { 1.0 } else { -1.0 };
        let scale = sign * r.powf(-1.0 - self.alpha - self.beta as f64);
        Ok(Complex64::new(0.0, -1.0) * sum * scale)
    }

    /// `(1 + r)^{(d-1)/2 + beta}`.
    pub fn envelope_weight(&self, r: f64) -> f64 {
        (1.0 + r).powf((self.dim as f64 - 1.0) / 2.0 + self.beta as f64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeReport {
    pub dim: usize,
    pub beta: usize,
    /// `(r, |h^(beta)(r)| (1 + r)^{(d-1)/2 + beta})`.
    pub samples: Vec<(f64, f64)>,
    pub sup: f64,
    /// The same supremum with twice the quadrature nodes.
    pub sup_refined: f64,
    pub relative_change: f64,
    /// Finite and within [`STABILITY_TOLERANCE`] under refinement.
    pub stable: bool,
}

/// Empirical envelope constant of `h^(beta)` over `radii`.
pub fn h_envelope_check(dim: usize, beta: usize, radii: &[f64]) -> Result<EnvelopeReport> {
    if radii.is_empty() {
        return Err(Error::InsufficientData("no sample radii".into()));
    }
    let sup_with = |nodes: usize| -> Result<(f64, Vec<(f64, f64)>)> {
        let h = HFunction::new(dim, beta, nodes)?;
        let mut samples = Vec::with_capacity(radii.len());
        for &r in radii {
            samples.push((r, h.eval(r)?.norm() * h.envelope_weight(r)));
        }
        let sup = samples.iter().map(|s| s.1).fold(0.0, f64::max);
        Ok((sup, samples))
    };
    let (sup, samples) = sup_with(DEFAULT_NODES)?;
    let (sup_refined, _) = sup_with(2 * DEFAULT_NODES)?;
    let relative_change = (sup_refined - sup).abs() / sup_refined.max(f64::MIN_POSITIVE);
    Ok(EnvelopeReport {
        dim,
        beta,
        samples,
        sup,
        sup_refined,
        relative_change,
        stable: sup.is_finite() && sup_refined.is_finite() && relative_change <= STABILITY_TOLERANCE,
    })
}

/// `count` radii log-uniformly spaced on `[1, 100]`.
pub fn default_radii(count: usize) -> Vec<f64> {
    crate::kernel::log_spaced(1.0, 100.0, count)
}
