//! Radial Dunkl transform of a radial profile.
//!
//! For `f(X) = f~(|X|)` the transform is the Bessel integral
//! `F f(rho) = (2 pi)^{N/2} int_0^inf f~(r) J_nu(r rho) / (r rho)^nu r^{N-1} dr`
//! with `nu = N/2 - 1` by default. The constant `(2 pi)^{N/2}` makes the
//! `gamma = 0` case equal to the classical `int f(X) e^{-i X . zeta} dX`, the
//! convention of the grid transforms; with it, Plancherel reads
//! `int |F f|^2 rho^{N-1} = (2 pi)^N int |f~|^2 r^{N-1}`.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussJacobi;
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::bessel::BesselJ;
use super::quadrature::{panel_integrate, PANEL_NODES};

/// Product-structure Dunkl parameters: ambient dimension `d`, weight
/// homogeneities `gamma1` (x block) and `gamma2` (y block), split `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DunklParams {
    dim: usize,
    gamma1: f64,
    gamma2: f64,
    split: usize,
}

impl DunklParams {
    pub fn new(dim: usize, gamma1: f64, gamma2: f64, split: usize) -> Result<Self> {
        if dim == 0 || split > dim {
            return Err(Error::InvalidData(format!("split {split} invalid for dimension {dim}")));
        }
        if !(gamma1 >= 0.0 && gamma2 >= 0.0) || !gamma1.is_finite() || !gamma2.is_finite() {
            return Err(Error::InvalidData(format!(
                "weight degrees ({gamma1}, {gamma2}) must be finite and non-negative"
            )));
        }
        Ok(Self {
            dim,
            gamma1,
            gamma2,
            split,
        })
    }

    /// `kappa = 0`.
    pub fn euclidean(dim: usize) -> Self {
        Self {
            dim,
            gamma1: 0.0,
            gamma2: 0.0,
            split: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn gamma(&self) -> f64 {
        self.gamma1 + self.gamma2
    }

    /// Homogeneous dimension `N = d + 2 gamma`.
    pub fn homogeneous_dim(&self) -> f64 {
        self.dim as f64 + 2.0 * self.gamma()
    }

    pub fn is_euclidean(&self) -> bool {
        self.gamma() == 0.0
    }
}

/// Order of the Bessel kernel in the radial transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BesselOrder {
    /// `N/2 - 1`; reproduces the classical transform at `gamma = 0`.
    #[default]
    Homogeneous,
    /// `(d - 2)/2`, the ambient-dimension order.
    Ambient,
}

impl BesselOrder {
    pub fn order(&self, params: &DunklParams) -> f64 {
        match self {
            BesselOrder::Homogeneous => params.homogeneous_dim() / 2.0 - 1.0,
            BesselOrder::Ambient => (params.dim() as f64 - 2.0) / 2.0,
        }
    }
}

/// `j_nu(z) = J_nu(z) / z^nu` for `nu >= -1/2`, with `j_{-1/2}(z) = sqrt(2/pi) cos z`.
#[derive(Clone, Debug)]
pub struct RadialKernel {
    nu: f64,
    bessel: Option<BesselJ>,
}

impl RadialKernel {
    pub fn new(nu: f64) -> Result<Self> {
        if nu == -0.5 {
            return Ok(Self { nu, bessel: None });
        }
        Ok(Self {
            nu,
            bessel: Some(BesselJ::new(nu)?),
        })
    }

    pub fn order(&self) -> f64 {
        self.nu
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        match &self.bessel {
            Some(b) => b.normalized(z),
            None => Ok((2.0 / PI).sqrt() * z.cos()),
        }
    }

    /// `j_nu(0) = 1 / (2^nu Gamma(nu + 1))`, also the supremum of `|j_nu|`.
    pub fn at_origin(&self) -> f64 {
        self.eval(0.0).expect("origin is in range")
    }
}

/// Profiles below this magnitude are treated as zero for truncation.
pub const TRUNCATION_LEVEL: f64 = 1e-14;
const MAX_RADIUS: f64 = 1e4;
const MIN_PANELS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransformValue {
    pub value: f64,
    /// Change when the panel count is doubled.
    pub error_estimate: f64,
}

/// Radial transform of a fixed profile, evaluable at many radii.
pub struct RadialTransform<'a> {
    profile: &'a dyn Fn(f64) -> f64,
    n_dim: f64,
    kernel: RadialKernel,
    cutoff: f64,
    scale: f64,
    /// First panel `[0, h]` with the weight `r^{N-1}` built in.
    head: Vec<(f64, f64)>,
}

impl<'a> RadialTransform<'a> {
    pub fn new(profile: &'a dyn Fn(f64) -> f64, params: &DunklParams, order: BesselOrder) -> Result<Self> {
        let n_dim = params.homogeneous_dim();
        let kernel = RadialKernel::new(order.order(params))?;
        let cutoff = truncation_radius(profile, n_dim)?;
        let beta = (n_dim - 1.0)
            .try_into()
            .map_err(|_| Error::Domain(format!("homogeneous dimension {n_dim}")))?;
        let alpha = 0.0.try_into().expect("zero is above -1");
        let rule = GaussJacobi::new(NonZeroUsize::new(PANEL_NODES).expect("nonzero"), alpha, beta);
        let head = rule.as_node_weight_pairs().to_vec();
        Ok(Self {
            profile,
            n_dim,
            kernel,
            cutoff,
            scale: (2.0 * PI).powf(n_dim / 2.0),
            head,
        })
    }

    /// Radius beyond which the profile is below [`TRUNCATION_LEVEL`].
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    fn integrate(&self, rho: f64, panels: usize) -> Result<f64> {
        let h = self.cutoff / panels as f64;
        let mut err = None;
        let mut g = |r: f64| {
            let k = match self.kernel.eval(r * rho) {
                Ok(v) => v,
                Err(e) => {
                    err.get_or_insert(e);
                    0.0
                }
            };
            (self.profile)(r) * k
        };
        // Panel [0, h]: int g(r) r^{N-1} dr with r = h (1 + x) / 2.
        let jac = (h / 2.0).powf(self.n_dim);
        let head: f64 = self.head.iter().map(|&(x, w)| w * g(h * (1.0 + x) / 2.0)).sum::<f64>() * jac;
        let tail = panel_integrate(h, self.cutoff, panels - 1, |r| {
            Complex64::new(g(r) * r.powf(self.n_dim - 1.0), 0.0)
        })
        .re;
        if let Some(e) = err {
            return Err(e);
        }
        let value = head + tail;
        if !value.is_finite() {
            return Err(Error::Integrability(format!("non-finite transform at rho = {rho}")));
        }
        Ok(self.scale * value)
    }

    pub fn eval_detailed(&self, rho: f64) -> Result<TransformValue> {
        if !(rho >= 0.0) {
            return Err(Error::Domain(format!("radius {rho} must be non-negative")));
        }
        let waves = (self.cutoff * rho / (2.0 * PI)).ceil() as usize;
        let panels = MIN_PANELS.max(8 * waves);
        let coarse = self.integrate(rho, panels)?;
        let fine = self.integrate(rho, 2 * panels)?;
        Ok(TransformValue {
            value: fine,
            error_estimate: (fine - coarse).abs(),
        })
    }

    pub fn eval(&self, rho: f64) -> Result<f64> {
        Ok(self.eval_detailed(rho)?.value)
    }
}

/// Smallest dyadic `R >= 1` with `|f~| < 1e-14` sampled on `[R, 2R]`, after
/// checking integrability of `f~(r) r^{N-1}` at the origin.
fn truncation_radius(profile: &dyn Fn(f64) -> f64, n_dim: f64) -> Result<f64> {
    let (a, b) = (profile(1e-8).abs(), profile(1e-6).abs());
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Integrability("profile is not finite near the origin".into()));
    }
    if a > 0.0 && b > 0.0 {
        let growth = (a / b).ln() / 100f64.ln();
        if growth >= n_dim - 1e-3 {
            return Err(Error::Integrability(format!(
                "profile grows like r^-{growth:.3} at the origin; the weight r^{{N-1}} needs less than r^-{n_dim}"
            )));
        }
    }
    let mut r = 1.0;
    while r <= MAX_RADIUS {
        let mut small = true;
        for i in 0..=64 {
            let v = profile(r * (1.0 + i as f64 / 64.0));
            if !v.is_finite() {
                return Err(Error::Integrability(format!("profile is not finite near r = {r}")));
            }
            if v.abs() >= TRUNCATION_LEVEL {
                small = false;
                break;
            }
        }
        if small {
            return Ok(r);
        }
        r *= 2.0;
    }
    Err(Error::Integrability(format!(
        "profile does not fall below {TRUNCATION_LEVEL:e} before r = {MAX_RADIUS:e}"
    )))
}

/// One-shot transform of `profile` at radius `rho`.
pub fn radial_dunkl_transform(
    profile: &dyn Fn(f64) -> f64,
    params: &DunklParams,
    rho: f64,
    order: BesselOrder,
) -> Result<f64> {
    RadialTransform::new(profile, params, order)?.eval(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::gamma;

    fn gauss(r: f64) -> f64 {
        (-r * r / 2.0).exp()
    }

    #[test]
    fn params_invariants() {
        let p = DunklParams::new(3, 0.5, 0.25, 1).unwrap();
        assert_eq!(p.homogeneous_dim(), 4.5);
        assert!(!p.is_euclidean());
        assert!(DunklParams::new(2, -0.1, 0.0, 1).is_err());
        assert!(DunklParams::new(2, 0.0, 0.0, 3).is_err());
        assert!(DunklParams::euclidean(2).is_euclidean());
        assert_eq!(DunklParams::euclidean(2).homogeneous_dim(), 2.0);
    }

    #[test]
    fn gaussian_is_self_dual() {
        for (d, g1, g2) in [
            (1, 0.0, 0.0),
            (2, 0.0, 0.0),
            (3, 0.0, 0.0),
            (1, 1.0, 0.0),
            (2, 0.3, 0.45),
        ] {
            let p = DunklParams::new(d, g1, g2, 0).unwrap();
            let n = p.homogeneous_dim();
            let t = RadialTransform::new(&gauss, &p, BesselOrder::Homogeneous).unwrap();
            for rho in [0.0, 0.5, 1.7, 4.0] {
                let want = (2.0 * PI).powf(n / 2.0) * gauss(rho);
                let got = t.eval(rho).unwrap();
                assert!(
                    (got - want).abs() < 1e-9 * want.max(1.0),
                    "N = {n}, rho = {rho}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn origin_value_is_weighted_mass() {
        let p = DunklParams::new(1, 1.0, 0.0, 0).unwrap();
        let n = p.homogeneous_dim();
        let profile = |r: f64| (1.0 + r) * (-r * r).exp();
        let mass = super::panel_integrate(0.0, 8.0, 256, |r| Complex64::new(profile(r) * r.powf(n - 1.0), 0.0)).re;
        let nu = n / 2.0 - 1.0;
        let want = (2.0 * PI).powf(n / 2.0) * mass / (2f64.powf(nu) * gamma(nu + 1.0));
        let got = radial_dunkl_transform(&profile, &p, 0.0, BesselOrder::Homogeneous).unwrap();
        assert!((got - want).abs() < 1e-12 * want);
    }

    #[test]
    fn linearity() {
        let p = DunklParams::new(2, 0.5, 0.0, 1).unwrap();
        let f = |r: f64| (-r * r).exp();
        let g = |r: f64| r * r * (-r * r / 3.0).exp();
        let h = |r: f64| 2.0 * f(r) - 0.5 * g(r);
        for rho in [0.3, 2.2] {
            let tf = radial_dunkl_transform(&f, &p, rho, BesselOrder::Homogeneous).unwrap();
            let tg = radial_dunkl_transform(&g, &p, rho, BesselOrder::Homogeneous).unwrap();
            let th = radial_dunkl_transform(&h, &p, rho, BesselOrder::Homogeneous).unwrap();
            assert!((th - (2.0 * tf - 0.5 * tg)).abs() < 1e-12 * th.abs().max(1.0));
        }
    }

    #[test]
    fn ambient_order_differs_only_when_weighted() {
        let e = DunklParams::euclidean(3);
        let a = radial_dunkl_transform(&gauss, &e, 1.3, BesselOrder::Ambient).unwrap();
        let b = radial_dunkl_transform(&gauss, &e, 1.3, BesselOrder::Homogeneous).unwrap();
        assert_eq!(a, b);
        let w = DunklParams::new(3, 1.0, 0.0, 1).unwrap();
        let a = radial_dunkl_transform(&gauss, &w, 1.3, BesselOrder::Ambient).unwrap();
        let b = radial_dunkl_transform(&gauss, &w, 1.3, BesselOrder::Homogeneous).unwrap();
        assert!((a - b).abs() > 1e-3);
    }

    #[test]
    fn integrability_errors() {
        let p = DunklParams::euclidean(2);
        let singular = |r: f64| r.powi(-3);
        assert!(matches!(
            radial_dunkl_transform(&singular, &p, 1.0, BesselOrder::Homogeneous),
            Err(Error::Integrability(_))
        ));
        let flat = |_: f64| 1.0;
        assert!(matches!(
            radial_dunkl_transform(&flat, &p, 1.0, BesselOrder::Homogeneous),
            Err(Error::Integrability(_))
        ));
    }
}
