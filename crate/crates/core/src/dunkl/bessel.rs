//! Bessel functions of the first kind for real order `nu > -1/2`.
//!
//! Small and moderate arguments use the Poisson integral
//! `J_nu(r) = (r/2)^nu / (Gamma(nu + 1/2) sqrt(pi)) int_{-1}^{1} cos(r tau) (1 - tau^2)^{nu - 1/2} dtau`
//! with Gauss-Jacobi nodes for the weight `(1 - tau^2)^{nu - 1/2}`. Large
//! arguments use the Hankel expansion truncated after six terms.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::num::NonZeroUsize;

use gauss_quad::GaussJacobi;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Arguments above this use the asymptotic expansion.
pub const ASYMPTOTIC_THRESHOLD: f64 = 50.0;
/// Largest supported argument.
pub const MAX_ARGUMENT: f64 = 1e6;
/// Terms kept in the Hankel expansion (three in `P`, three in `Q`).
pub const HANKEL_TERMS: usize = 6;
/// Target absolute error of the integral branch.
pub const INTEGRAL_ERROR: f64 = 1e-10;

/// Upper edges of the argument brackets; each bracket has its own rule.
const BRACKETS: [f64; 4] = [2.0, 10.0, 25.0, ASYMPTOTIC_THRESHOLD];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Integral,
    Asymptotic,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselEval {
    pub order: f64,
    pub argument: f64,
    pub strategy: Strategy,
    pub value: f64,
    /// Absolute error bound: the quadrature target for the integral branch,
    /// the first omitted Hankel term for the asymptotic branch.
    pub error_bound: f64,
}

/// Envelope constants: `|J_nu(r)| <= small r^nu` on `(0, 1)` and
/// `|J_nu(r)| <= large r^{-1/2}` on `[1, inf)`; `constant` is the larger.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselConstants {
    pub order: f64,
    pub small: f64,
    pub large: f64,
    pub constant: f64,
}

/// `J_nu` with quadrature rules prepared once for a fixed order.
#[derive(Clone, Debug)]
pub struct BesselJ {
    nu: f64,
    /// `1 / (Gamma(nu + 1/2) sqrt(pi))`.
    prefactor: f64,
    /// Half of each symmetric rule: nodes `tau >= 0` with doubled weights
    /// off the centre.
    rules: Vec<Vec<(f64, f64)>>,
    hankel: [f64; HANKEL_TERMS + 1],
}

fn nodes_for(edge: f64) -> usize {
    16 + (1.6 * edge).ceil() as usize
}

impl BesselJ {
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu > -0.5) || !nu.is_finite() {
            return Err(Error::Domain(format!("Bessel order {nu} must exceed -1/2")));
        }
        let a = (nu - 0.5)
            .try_into()
            .map_err(|_| Error::Domain(format!("Bessel order {nu}")))?;
        let rules = BRACKETS
            .iter()
            .map(|&edge| {
                let n = NonZeroUsize::new(nodes_for(edge)).expect("positive node count");
                let rule = GaussJacobi::new(n, a, a);
                let mut half: Vec<(f64, f64)> = rule
                    .as_node_weight_pairs()
                    .iter()
                    .filter(|(x, _)| *x >= 0.0)
                    .map(|&(x, w)| if x.abs() < 1e-15 { (0.0, w) } else { (x, 2.0 * w) })
                    .collect();
                half.sort_by(|p, q| p.0.total_cmp(&q.0));
                half
            })
            .collect();
        let mu = 4.0 * nu * nu;
        let mut hankel = [0.0; HANKEL_TERMS + 1];
        hankel[0] = 1.0;
        for k in 1..=HANKEL_TERMS {
            let j = (2 * k - 1) as f64;
            hankel[k] = hankel[k - 1] * (mu - j * j) / (k as f64 * 8.0);
        }
        Ok(Self {
            nu,
            prefactor: 1.0 / (gamma(nu + 0.5) * PI.sqrt()),
            rules,
            hankel,
        })
    }

    pub fn order(&self) -> f64 {
        self.nu
    }

    fn check(&self, r: f64) -> Result<()> {
        if !(r >= 0.0) || r > MAX_ARGUMENT {
            return Err(Error::Domain(format!(
                "Bessel argument {r} outside [0, {MAX_ARGUMENT:e}]"
            )));
        }
        Ok(())
    }

    /// `int_{-1}^{1} cos(r tau) (1 - tau^2)^{nu - 1/2} dtau` for `r <= 50`.
    fn poisson_integral(&self, r: f64) -> f64 {
        let idx = BRACKETS.iter().position(|&e| r <= e).unwrap_or(BRACKETS.len() - 1);
        self.rules[idx].iter().map(|&(x, w)| w * (r * x).cos()).sum()
    }

    /// `(P, Q, first omitted term)` of the Hankel expansion.
    fn hankel_pq(&self, r: f64) -> (f64, f64, f64) {
        let (mut p, mut q) = (0.0, 0.0);
        let mut pow = 1.0;
        for k in 0..HANKEL_TERMS {
            let term = self.hankel[k] * pow;
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                p += sign * term;
            } else {
                q += sign * term;
            }
            pow /= r;
        }
        (p, q, (self.hankel[HANKEL_TERMS] * pow).abs())
    }

    fn asymptotic(&self, r: f64) -> (f64, f64) {
        let (p, q, tail) = self.hankel_pq(r);
        let w = r - self.nu * FRAC_PI_2 - FRAC_PI_4;
        let amp = (2.0 / (PI * r)).sqrt();
        (amp * (p * w.cos() - q * w.sin()), amp * tail)
    }

    pub fn eval_detailed(&self, r: f64) -> Result<BesselEval> {
        self.check(r)?;
        let (strategy, value, error_bound) = if r <= ASYMPTOTIC_THRESHOLD {
            let v = if r == 0.0 && self.nu > 0.0 {
                0.0
            } else {
                (r / 2.0).powf(self.nu) * self.prefactor * self.poisson_integral(r)
            };
            (Strategy::Integral, v, INTEGRAL_ERROR)
        } else {
            let (v, e) = self.asymptotic(r);
            (Strategy::Asymptotic, v, e)
        };
        Ok(BesselEval {
            order: self.nu,
            argument: r,
            strategy,
            value,
            error_bound,
        })
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        Ok(self.eval_detailed(r)?.value)
    }

    /// `J_nu(z) / z^nu`, continuous at `z = 0` with value
    /// `1 / (2^nu Gamma(nu + 1))`.
    pub fn normalized(&self, z: f64) -> Result<f64> {
        self.check(z)?;
        if z <= ASYMPTOTIC_THRESHOLD {
            Ok(2f64.powf(-self.nu) * self.prefactor * self.poisson_integral(z))
        } else {
            Ok(self.asymptotic(z).0 / z.powf(self.nu))
        }
    }

    /// Calibrates the envelope constants. The small-argument constant is the
    /// classical `1 / (2^nu Gamma(nu + 1))`; the large-argument one is the
    /// sampled supremum of `sqrt(r) |J_nu(r)|` over `[1, R]` padded by 1%,
    /// joined with the Hankel envelope beyond `R`.
    pub fn calibrate(&self) -> BesselConstants {
        let small = 1.0 / (2f64.powf(self.nu) * gamma(self.nu + 1.0));
        let reach = (4.0 * self.nu + 60.0).max(100.0);
        let step = 0.01;
        let count = ((reach - 1.0) / step).ceil() as usize;
        let mut sup: f64 = 0.0;
        for i in 0..=count {
            let r = 1.0 + i as f64 * step;
            if let Ok(v) = self.eval(r) {
                sup = sup.max(r.sqrt() * v.abs());
            }
        }
        let (p, q, tail) = self.hankel_pq(reach);
        let envelope = (2.0 / PI).sqrt() * (p.abs() + q.abs() + tail);
        let large = (1.01 * sup).max(envelope);
        BesselConstants {
            order: self.nu,
            small,
            large,
            constant: small.max(large),
        }
    }
}

/// One-shot `J_nu(r)`. Build a [`BesselJ`] for repeated evaluation.
pub fn bessel_j(nu: f64, r: f64) -> Result<f64> {
    BesselJ::new(nu)?.eval(r)
}

/// Calibrated envelope constants for each order.
pub fn calibration_table(orders: &[f64]) -> Result<Vec<BesselConstants>> {
    orders.iter().map(|&nu| Ok(BesselJ::new(nu)?.calibrate())).collect()
}
