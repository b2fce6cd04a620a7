use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use displab::dunkl::{
    calibration_table, panel_integrate, verify_dunkl_decay, BesselJ, BesselOrder, DunklParams, RadialPhase,
    RadialTransform, Regime, ERROR_TARGET,
};
use displab::kernel::{auto_grid, verify_decay_rates, DecayPolicy, NormPair};
use displab::{Complex, Symbol64};

const ORDERS: [f64; 8] = [-0.25, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.5];

#[test]
fn bessel_envelopes_hold_at_random_points() {
    let table = calibration_table(&ORDERS).unwrap();
    let evaluators: Vec<BesselJ> = ORDERS.iter().map(|&nu| BesselJ::new(nu).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let i = rng.random_range(0..ORDERS.len());
        let (c, j) = (&table[i], &evaluators[i]);
        if rng.random_bool(0.3) {
            let r: f64 = rng.random_range(1e-6..1.0);
            let v = j.eval(r).unwrap().abs();
            assert!(v <= c.small * r.powf(c.order) * (1.0 + 1e-9), "nu {}, r {r}", c.order);
        } else {
            let r: f64 = 10f64.powf(rng.random_range(0.0..3.0));
            let v = j.eval(r).unwrap().abs();
            assert!(v <= c.large / r.sqrt(), "nu {}, r {r}", c.order);
        }
    }
}

fn radial_mass(profile: &dyn Fn(f64) -> f64, n: f64, reach: f64) -> f64 {
    panel_integrate(0.0, reach, 64, |r| {
        Complex::new(profile(r).powi(2) * r.powf(n - 1.0), 0.0)
    })
    .re
}

#[test]
fn radial_plancherel_for_gaussians() {
    for (dim, gamma, width) in [
        (1usize, 0.0, 1.0),
        (1, 1.0, 0.7),
        (2, 0.0, 1.3),
        (2, 0.6, 1.0),
        (3, 0.25, 0.8),
    ] {
        let params = DunklParams::new(dim, gamma, 0.0, 0).unwrap();
        let n = params.homogeneous_dim();
        let profile = move |r: f64| (-r * r / (2.0 * width * width)).exp();
        let transform = RadialTransform::new(&profile, &params, BesselOrder::Homogeneous).unwrap();
        let left = radial_mass(&profile, n, 12.0 * width);
        let right = panel_integrate(0.0, 12.0 / width, 64, |rho| {
            Complex::new(transform.eval(rho).unwrap().powi(2) * rho.powf(n - 1.0), 0.0)
        })
        .re;
        let constant = (2.0 * std::f64::consts::PI).powf(n);
        assert!(
            (right / (constant * left) - 1.0).abs() <= 1e-6,
            "d {dim}, gamma {gamma}: {right} vs {}",
            constant * left
        );
    }
}

#[test]
fn quadrature_converges_on_decay_samples() {
    let params = DunklParams::new(1, 1.0, 0.0, 0).unwrap();
    let policy = DecayPolicy {
        samples: 8,
        ..DecayPolicy::default()
    };
    for (phase, regime) in [
        (RadialPhase::Power(2.0), Regime::Ray(2.0)),
        (RadialPhase::Power(1.0), Regime::Ray(1.0)),
        (RadialPhase::Power(2.0), Regime::Far),
    ] {
        let d = verify_dunkl_decay(phase, &params, regime, &policy).unwrap();
        assert!(d.samples.iter().all(|s| s.error_estimate <= ERROR_TARGET));
    }
}

#[test]
fn unweighted_decay_matches_grid_kernel_decay() {
    let policy = DecayPolicy::default();
    let radial = verify_dunkl_decay(
        RadialPhase::Power(2.0),
        &DunklParams::euclidean(2),
        Regime::Ray(2.0),
        &policy,
    )
    .unwrap();
    let symbol = Symbol64::schrodinger(2);
    let grid = auto_grid(&symbol, 2, 1, policy.t_max).unwrap();
    let spectral = verify_decay_rates(&symbol, &grid, NormPair::SupSup, &policy).unwrap();
    assert!((radial.fit.exponent + 1.0).abs() <= 0.1, "{:?}", radial.fit);
    assert!((radial.fit.exponent - spectral.fit.exponent).abs() <= 0.1);
}
