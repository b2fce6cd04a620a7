//! Decay of `|I(t, x)|` along curves in the `(x, t)` half-plane.

use crate::error::Result;
use crate::kernel::{fit_decay, log_spaced, DecayFit, DecayPolicy};
use crate::littlewood_paley::cutoff;

use super::oscillatory::{OscillatoryIntegral, RadialPhase};
use super::transform::DunklParams;

/// Where `(x, t)` is sampled.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Regime {
    /// `|x| = 2 max|phi'| t`: no stationary point.
    Far,
    /// `|x| = phi'(1) t`: stationary point at the centre of the support.
    Near,
    /// `|x| = c t`.
    Ray(f64),
}

impl Regime {
    pub fn radius(&self, phase: &RadialPhase, t: f64) -> f64 {
        match *self {
            Regime::Far => 2.0 * phase.max_slope() * t,
            Regime::Near => phase.derivative(1.0) * t,
            Regime::Ray(c) => c * t,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Regime::Far => "far".into(),
            Regime::Near => "near".into(),
            Regime::Ray(c) => format!("ray({c})"),
        }
    }
}

/// Exponent the fit is compared with: `-(N + 2)/2` as an upper bound in
/// the far regime, `-(N - 1)/2` for linear phases and `-N/2` otherwise.
pub fn predicted_exponent(phase: &RadialPhase, params: &DunklParams, regime: Regime) -> f64 {
    let n = params.homogeneous_dim();
    match regime {
        Regime::Far => -(n + 2.0) / 2.0,
        _ if phase.is_linear() => -(n - 1.0) / 2.0,
        _ => -n / 2.0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DunklSample {
    pub t: f64,
    pub x: f64,
    pub modulus: f64,
    pub error_estimate: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DunklDecay {
    pub regime: Regime,
    /// Regression of `log |I|` on `log(1 + |(x, t)|)`.
    pub fit: DecayFit,
    pub predicted: f64,
    pub samples: Vec<DunklSample>,
    /// Far regime: `fit <= predicted`; otherwise within the tolerance.
    pub pass: bool,
}

/// Samples `|I|` at the policy's times along the regime's curve and fits the
/// decay in `|(x, t)|`.
pub fn verify_dunkl_decay(
    phase: RadialPhase,
    params: &DunklParams,
    regime: Regime,
    policy: &DecayPolicy,
) -> Result<DunklDecay> {
    let psi = |r: f64| cutoff(r);
    let op = OscillatoryIntegral::new(phase, &psi, params)?;
    let mut samples = Vec::with_capacity(policy.samples);
    for t in log_spaced(policy.t_min, policy.t_max, policy.samples) {
        let x = regime.radius(&phase, t);
        let v = op.eval(t, x)?;
        samples.push(DunklSample {
            t,
            x,
            modulus: v.value.norm(),
            error_estimate: v.error_estimate,
        });
    }
    let points: Vec<(f64, f64)> = samples.iter().map(|s| (s.t.hypot(s.x), s.modulus)).collect();
    let fit = fit_decay(&points)?;
    let predicted = predicted_exponent(&phase, params, regime);
    let pass = match regime {
        Regime::Far => fit.exponent <= predicted,
        _ => (fit.exponent - predicted).abs() <= policy.tolerance,
    };
    Ok(DunklDecay {
        regime,
        fit,
        predicted,
        samples,
        pass,
    })
}
