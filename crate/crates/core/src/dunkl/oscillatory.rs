//! The oscillatory integrals
//! `I(t, x) = int_0^inf e^{-it phi(r)} psi(r) j_nu(r |x|) r^{N-1} dr`,
//! `j_nu(z) = J_nu(z) / z^nu`, `nu = N/2 - 1`, which are the radial kernels
//! of frequency-localized Dunkl propagators.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::littlewood_paley::cutoff;

use super::quadrature::{panel_integrate, PANEL_NODES};
use super::transform::{DunklParams, RadialKernel};

/// Support of the cutoff.
pub const SUPPORT: (f64, f64) = (0.5, 2.0);
/// Absolute error target, validated by panel doubling.
pub const ERROR_TARGET: f64 = 1e-8;
/// Largest number of integrand evaluations in one call.
pub const NODE_BUDGET: usize = 10_000_000;
/// Minimum panels per `2 pi` of phase variation.
pub const PANELS_PER_WAVE: usize = 8;

/// Radial phase `phi` on the cutoff support.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadialPhase {
    /// `phi(r) = r^alpha`.
    Power(f64),
}

impl RadialPhase {
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            RadialPhase::Power(a) => r.powf(a),
        }
    }

    pub fn derivative(&self, r: f64) -> f64 {
        match *self {
            RadialPhase::Power(a) => a * r.powf(a - 1.0),
        }
    }

    pub fn second_derivative(&self, r: f64) -> f64 {
        match *self {
            RadialPhase::Power(a) => a * (a - 1.0) * r.powf(a - 2.0),
        }
    }

    fn sample_support(&self, f: impl Fn(f64) -> f64) -> f64 {
        let (a, b) = SUPPORT;
        (0..=256)
            .map(|i| f(a + (b - a) * i as f64 / 256.0).abs())
            .fold(0.0, f64::max)
    }

    /// `max |phi'|` on the support.
    pub fn max_slope(&self) -> f64 {
        self.sample_support(|r| self.derivative(r))
    }

    /// Whether `phi''` vanishes identically on the support.
    pub fn is_linear(&self) -> bool {
        self.sample_support(|r| self.second_derivative(r)) < 1e-12
    }

    pub fn label(&self) -> String {
        match *self {
            RadialPhase::Power(a) => format!("r^{a}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscillatoryValue {
    pub value: Complex64,
    /// Change between the last two panel counts.
    pub error_estimate: f64,
    pub panels: usize,
    /// Integrand evaluations spent.
    pub nodes: usize,
}

/// Evaluator for fixed parameters, cutoff and phase.
pub struct OscillatoryIntegral<'a> {
    params: DunklParams,
    kernel: RadialKernel,
    phase: RadialPhase,
    psi: &'a dyn Fn(f64) -> f64,
    slope: f64,
}

impl<'a> OscillatoryIntegral<'a> {
    pub fn new(phase: RadialPhase, psi: &'a dyn Fn(f64) -> f64, params: &DunklParams) -> Result<Self> {
        let kernel = RadialKernel::new(params.homogeneous_dim() / 2.0 - 1.0)?;
        Ok(Self {
            params: *params,
            kernel,
            phase,
            psi,
            slope: phase.max_slope(),
        })
    }

    pub fn params(&self) -> &DunklParams {
        &self.params
    }

    pub fn phase(&self) -> RadialPhase {
        self.phase
    }

    /// `||psi||_{L^1_kappa} = j_nu(0) int psi r^{N-1} dr`, which bounds
    /// `|I(t, x)|` and equals `I(0, 0)`.
    pub fn weighted_mass(&self) -> Result<f64> {
        Ok(self.eval(0.0, 0.0)?.value.re)
    }

    fn integrate(&self, t: f64, x: f64, panels: usize) -> Result<Complex64> {
        let n1 = self.params.homogeneous_dim() - 1.0;
        let mut err = None;
        let (a, b) = SUPPORT;
        let v = panel_integrate(a, b, panels, |r| {
            let k = match self.kernel.eval(r * x) {
                Ok(v) => v,
                Err(e) => {
                    err.get_or_insert(e);
                    0.0
                }
            };
            Complex64::from_polar((self.psi)(r) * k * r.powf(n1), -t * self.phase.eval(r))
        });
        match err {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }

    /// Starting panel count `8 ceil((|t| max|phi'| + |x|) / 2 pi)`.
    pub fn initial_panels(&self, t: f64, x: f64) -> usize {
        let waves = ((t.abs() * self.slope + x.abs()) / (2.0 * PI)).ceil() as usize;
        PANELS_PER_WAVE * waves.max(1)
    }

    /// Doubles the panel count until successive values agree to
    /// [`ERROR_TARGET`].
    pub fn eval(&self, t: f64, x: f64) -> Result<OscillatoryValue> {
        if !t.is_finite() || !(x >= 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!("(t, |x|) = ({t}, {x}) is not admissible")));
        }
        let mut panels = self.initial_panels(t, x);
        let mut spent = 0;
        let mut charge = |p: usize| -> Result<()> {
            spent += p * PANEL_NODES;
            if spent > NODE_BUDGET {
                return Err(Error::Cost {
                    nodes: spent,
                    limit: NODE_BUDGET,
                });
            }
            Ok(())
        };
        charge(panels)?;
        let mut prev = self.integrate(t, x, panels)?;
        loop {
            charge(2 * panels)?;
            let next = self.integrate(t, x, 2 * panels)?;
            let change = (next - prev).norm();
            panels *= 2;
            if change <= ERROR_TARGET {
                return Ok(OscillatoryValue {
                    value: next,
                    error_estimate: change,
                    panels,
                    nodes: spent,
                });
            }
            prev = next;
        }
    }
}

/// One-shot `I(t, x)` with the standard cutoff.
pub fn dunkl_oscillatory(phase: RadialPhase, params: &DunklParams, x_radius: f64, t: f64) -> Result<OscillatoryValue> {
    let psi = |r: f64| cutoff(r);
    OscillatoryIntegral::new(phase, &psi, params)?.eval(t, x_radius)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    // Reference values from 30-digit arbitrary-precision quadrature.
    const ORACLE: [(f64, f64, f64, f64, f64, f64); 5] = [
        (3.0, 2.0, 0.0, 0.0, 0.81360752004575213209, 0.0),
        (3.0, 2.0, 3.0, 5.0, 0.060462142736927771304, 0.001152093000119561509),
        (3.0, 1.0, 4.0, 4.0, 0.00087131289490518258646, -0.086846679844807384431),
        (2.6, 2.0, 2.0, 1.5, -0.17690579966818268906, -0.12587278144712681242),
        (2.0, 2.0, 1.0, 0.7, 0.088192925680014077181, -0.58287168127626612921),
    ];

    #[test]
    fn matches_reference_values() {
        for (n, alpha, t, x, re, im) in ORACLE {
            // N = d + 2 gamma with d = 1 or 2.
            let d = if n < 2.0 { 1 } else { 2 };
            let params = DunklParams::new(d, (n - d as f64) / 2.0, 0.0, 0).unwrap();
            let v = dunkl_oscillatory(RadialPhase::Power(alpha), &params, x, t).unwrap();
            let want = Complex64::new(re, im);
            assert!(
                (v.value - want).norm() < 1e-9,
                "N = {n}, t = {t}, x = {x}: {} vs {want}",
                v.value
            );
            assert!(v.error_estimate <= ERROR_TARGET);
        }
    }

    #[test]
    fn modulus_bound() {
        let params = DunklParams::new(1, 1.0, 0.0, 0).unwrap();
        let psi = |r: f64| cutoff(r);
        let op = OscillatoryIntegral::new(RadialPhase::Power(2.0), &psi, &params).unwrap();
        let mass = op.weighted_mass().unwrap();
        for t in [0.5, 3.0, 11.0] {
            for x in [0.0, 1.0, 6.0, 30.0] {
                assert!(op.eval(t, x).unwrap().value.norm() <= mass * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn panel_rule_and_budget() {
        let params = DunklParams::new(1, 1.0, 0.0, 0).unwrap();
        let psi = |r: f64| cutoff(r);
        let op = OscillatoryIntegral::new(RadialPhase::Power(2.0), &psi, &params).unwrap();
        assert_eq!(op.initial_panels(0.0, 0.0), 8);
        assert_eq!(op.initial_panels(10.0, 0.0), 8 * 7);
        assert!(matches!(op.eval(1e6, 0.0), Err(Error::Cost { .. })));
    }

    #[test]
    fn phase_properties() {
        assert!(RadialPhase::Power(1.0).is_linear());
        assert!(!RadialPhase::Power(2.0).is_linear());
        assert!((RadialPhase::Power(2.0).max_slope() - 4.0).abs() < 1e-12);
    }
}
