//! Bessel functions, radial transforms and decay of radial Dunkl kernels.

use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use displab::dunkl::{
    bessel_j, calibration_table, default_radii, h_envelope_check, panel_integrate, verify_dunkl_decay, BesselJ,
    BesselOrder, DunklDecay, DunklParams, RadialPhase, RadialTransform, Regime,
};
use displab::fourier::{continuum_transform, forward_transform};
use displab::kernel::{fit_decay, DecayPolicy};
use displab::{Complex, Field64, Grid64};

use crate::config::DunklConfig;
use crate::error::CliResult;
use crate::record::{Case, SuiteOutput, Table};

const ANCHOR_HALF: &str = "J_{1/2}(r) = sqrt(2/(pi r)) sin r";
const ANCHOR_RECURRENCE: &str = "d/dr (r^{-nu} J_nu(r)) = -r^{-nu} J_{nu+1}(r)";
const ANCHOR_ENVELOPE: &str = "|J_nu(r)| <= C r^nu on (0, 1) and C r^{-1/2} on [1, inf)";
const ANCHOR_TRANSFORM: &str = "gamma = 0 radial transform equals the Euclidean Fourier transform";
const ANCHOR_PLANCHEREL: &str = "radial Plancherel: int |F|^2 rho^{N-1} = (2 pi)^N int |f|^2 r^{N-1}";
const ANCHOR_NEAR: &str = "|I(t, x)| <= C (1 + |(x, t)|)^{-N/2}, or ^{-(N-1)/2} for linear phases";
const ANCHOR_FAR: &str = "non-stationary regime: |I(t, x)| decays faster than (1 + |(x, t)|)^{-(N+2)/2}";
const ANCHOR_EUCLIDEAN: &str = "gamma = 0 reproduces the Euclidean Schrodinger decay t^{-d/2}";
const ANCHOR_H: &str = "|h^(beta)(r)| <= C (1 + r)^{-(d-1)/2 - beta}";

const HALF_ORDER_TOL: f64 = 1e-10;
const RECURRENCE_STEP: f64 = 1e-3;
const RECURRENCE_TOL: f64 = 1e-6;
const TRANSFORM_TOL: f64 = 1e-6;
const PLANCHEREL_TOL: f64 = 1e-6;
const EUCLIDEAN_TOL: f64 = 0.1;
const ENVELOPE_ORDERS: [f64; 8] = [-0.25, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.5];

fn bessel_cases(cfg: &DunklConfig, seed: u64, out: &mut SuiteOutput) -> CliResult<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radii = [0.01, 0.3, 1.0, 4.7, 13.0, 49.5, 50.5, 77.0, 300.0];
    let mut closed = 0.0f64;
    for r in radii {
        let want = (2.0 / (PI * r)).sqrt() * r.sin();
        closed = closed.max((bessel_j(0.5, r)? - want).abs());
    }
    out.cases.push(Case::new(
        "bessel/half-order",
        json!({ "radii": radii, "seed": seed }),
        json!({ "max_abs_error": closed }),
        json!({ "tolerance": HALF_ORDER_TOL }),
        ANCHOR_HALF,
        closed <= HALF_ORDER_TOL,
    ));

    let mut recurrence = 0.0f64;
    for _ in 0..cfg.recurrence_points {
        let nu: f64 = rng.random_range(0.0..4.0);
        let r: f64 = rng.random_range(0.5..80.0);
        let (j, j1) = (BesselJ::new(nu)?, BesselJ::new(nu + 1.0)?);
        let g = |x: f64| -> displab::Result<f64> { Ok(x.powf(-nu) * j.eval(x)?) };
        let h = RECURRENCE_STEP;
        let derivative = (g(r + h)? - g(r - h)?) / (2.0 * h);
        recurrence = recurrence.max((derivative + r.powf(-nu) * j1.eval(r)?).abs());
    }
    out.cases.push(Case::new(
        "bessel/recurrence",
        json!({ "points": cfg.recurrence_points, "order_range": [0.0, 4.0], "radius_range": [0.5, 80.0], "step": RECURRENCE_STEP, "seed": seed }),
        json!({ "max_abs_residual": recurrence }),
        json!({ "tolerance": RECURRENCE_TOL }),
        ANCHOR_RECURRENCE,
        recurrence <= RECURRENCE_TOL,
    ));

    let table = calibration_table(&ENVELOPE_ORDERS)?;
    let mut violations = 0usize;
    for c in &table {
        let j = BesselJ::new(c.order)?;
        for _ in 0..cfg.envelope_points / ENVELOPE_ORDERS.len() {
            let r: f64 = 10f64.powf(rng.random_range(-3.0..3.0));
            let bound = if r < 1.0 {
                c.small * r.powf(c.order)
            } else {
                c.large / r.sqrt()
            };
            if j.eval(r)?.abs() > bound * (1.0 + 1e-9) {
                violations += 1;
            }
        }
    }
    out.cases.push(Case::new(
        "bessel/envelope",
        json!({ "orders": ENVELOPE_ORDERS, "points": cfg.envelope_points, "radius_range": [1e-3, 1e3], "seed": seed }),
        json!({
            "violations": violations,
            "constants": table.iter().map(|c| json!({ "order": c.order, "small": c.small, "large": c.large })).collect::<Vec<_>>(),
        }),
        json!({ "violations": 0 }),
        ANCHOR_ENVELOPE,
        violations == 0,
    ));
    Ok(())
}

fn transform_cases(seed: u64, out: &mut SuiteOutput) -> CliResult<()> {
    let grid = Grid64::new(2, 1, 12.0, 128)?;
    let profile = |r: f64| (1.0 + r * r) * (-r * r / 2.0).exp();
    let f = Field64::from_fn(grid.clone(), |x| Complex::new(profile(x[0].hypot(x[1])), 0.0))?;
    let cont = continuum_transform(&forward_transform(&f));
    let transform = RadialTransform::new(&profile, &DunklParams::euclidean(2), BesselOrder::Homogeneous)?;
    let mut zeta = [0.0; 2];
    let mut worst = 0.0f64;
    for flat in (0..grid.len()).step_by(997) {
        grid.frequency_at(flat, &mut zeta);
        // The grid transform is unitary; the radial transform carries (2 pi)^{N/2}.
        let want = cont[flat].re * 2.0 * PI;
        let got = transform.eval(zeta[0].hypot(zeta[1]))?;
        worst = worst.max((got - want).abs() / want.abs().max(1e-3));
    }
    out.cases.push(Case::new(
        "transform/euclidean-2d",
        json!({ "profile": "(1 + r^2) exp(-r^2/2)", "grid": [2, 1, 12.0, 128], "stride": 997, "seed": seed }),
        json!({ "max_relative_error": worst }),
        json!({ "tolerance": TRANSFORM_TOL }),
        ANCHOR_TRANSFORM,
        worst <= TRANSFORM_TOL,
    ));

    let mut worst = 0.0f64;
    for (dim, gamma, width) in [(1usize, 0.0, 1.0), (1, 1.0, 0.7), (2, 0.6, 1.0), (3, 0.25, 0.8)] {
        let params = DunklParams::new(dim, gamma, 0.0, 0)?;
        let n = params.homogeneous_dim();
        let profile = move |r: f64| (-r * r / (2.0 * width * width)).exp();
        let transform = RadialTransform::new(&profile, &params, BesselOrder::Homogeneous)?;
        let left = panel_integrate(0.0, 12.0 * width, 64, |r| {
            Complex::new(profile(r).powi(2) * r.powf(n - 1.0), 0.0)
        })
        .re;
        let mut failure = None;
        let right = panel_integrate(0.0, 12.0 / width, 64, |rho| {
            let v = transform.eval(rho).unwrap_or_else(|e| {
                failure = Some(e);
                0.0
            });
            Complex::new(v * v * rho.powf(n - 1.0), 0.0)
        })
        .re;
        if let Some(e) = failure {
            return Err(e.into());
        }
        worst = worst.max((right / ((2.0 * PI).powf(n) * left) - 1.0).abs());
    }
    out.cases.push(Case::new(
        "transform/plancherel",
        json!({ "profiles": "Gaussians", "weights": [[1, 0.0], [1, 1.0], [2, 0.6], [3, 0.25]], "seed": seed }),
        json!({ "max_relative_error": worst }),
        json!({ "tolerance": PLANCHEREL_TOL }),
        ANCHOR_PLANCHEREL,
        worst <= PLANCHEREL_TOL,
    ));
    Ok(())
}

struct DecayJob {
    n: f64,
    alpha: f64,
    regime: Regime,
}

fn decay_case(job: &DecayJob, cfg: &DunklConfig, seed: u64) -> displab::Result<(Case, Table)> {
    let params = DunklParams::new(1, (job.n - 1.0) / 2.0, 0.0, 0)?;
    let phase = RadialPhase::Power(job.alpha);
    let policy = cfg.policy.policy();
    let d: DunklDecay = verify_dunkl_decay(phase, &params, job.regime, &policy)?;
    let near = !matches!(job.regime, Regime::Far);
    let mut measured = json!({
        "exponent": d.fit.exponent,
        "max_log_residual": d.fit.max_residual,
        "max_quadrature_error": d.samples.iter().map(|s| s.error_estimate).fold(0.0, f64::max),
    });
    if near {
        let late = DecayPolicy {
            t_min: cfg.late_window[0],
            t_max: cfg.late_window[1],
            ..policy
        };
        let late = verify_dunkl_decay(phase, &params, job.regime, &late)?;
        measured["late_window"] = json!(cfg.late_window);
        measured["late_exponent"] = json!(late.fit.exponent);
    }
    let predicted = if near {
        json!({ "exponent": d.predicted, "tolerance": policy.tolerance })
    } else {
        json!({ "exponent_at_most": d.predicted.min(cfg.far_max) })
    };
    let pass = if near {
        d.pass
    } else {
        d.fit.exponent <= d.predicted.min(cfg.far_max)
    };
    let label = if near { "near" } else { "far" };
    let id = format!("decay/N={}/phi=r^{}/{label}", job.n, job.alpha);
    let case = Case::new(
        id.clone(),
        json!({
            "homogeneous_dim": job.n,
            "dim": 1,
            "gamma": (job.n - 1.0) / 2.0,
            "phase_exponent": job.alpha,
            "regime": job.regime.label(),
            "window": [policy.t_min, policy.t_max],
            "samples": policy.samples,
            "seed": seed,
        }),
        measured,
        predicted,
        if near { ANCHOR_NEAR } else { ANCHOR_FAR },
        pass,
    );
    let table = Table::pairs(
        id.replace('/', "_"),
        "radius",
        "modulus",
        d.samples.iter().map(|s| (s.t.hypot(s.x), s.modulus)),
    );
    Ok((case, table))
}

fn decay_cases(cfg: &DunklConfig, seed: u64, out: &mut SuiteOutput) -> CliResult<()> {
    let mut jobs = Vec::new();
    for &n in &cfg.homogeneous_dims {
        for &alpha in &cfg.phases {
            jobs.push(DecayJob {
                n,
                alpha,
                regime: Regime::Near,
            });
            if alpha != 1.0 {
                jobs.push(DecayJob {
                    n,
                    alpha,
                    regime: Regime::Far,
                });
            }
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(|j| decay_case(j, cfg, seed))
        .collect::<displab::Result<_>>()?;
    for (case, table) in results {
        out.cases.push(case);
        out.tables.push(table);
    }

    let policy = cfg.policy.policy();
    let radial = verify_dunkl_decay(
        RadialPhase::Power(2.0),
        &DunklParams::euclidean(2),
        Regime::Ray(2.0),
        &policy,
    )?;
    let exponent = fit_decay(&radial.samples.iter().map(|s| (s.t, s.modulus)).collect::<Vec<_>>())?.exponent;
    out.cases.push(Case::new(
        "decay/euclidean-2d",
        json!({ "dim": 2, "gamma": 0.0, "phase_exponent": 2.0, "regime": "ray(2)", "window": [policy.t_min, policy.t_max], "seed": seed }),
        json!({ "exponent_in_t": exponent }),
        json!({ "exponent_in_t": -1.0, "tolerance": EUCLIDEAN_TOL }),
        ANCHOR_EUCLIDEAN,
        (exponent + 1.0).abs() <= EUCLIDEAN_TOL,
    ));
    Ok(())
}

fn envelope_cases(cfg: &DunklConfig, seed: u64, out: &mut SuiteOutput) -> CliResult<()> {
    let radii = default_radii(64);
    for &dim in &cfg.envelope_dims {
        let mut sups = Vec::new();
        let mut worst = 0.0f64;
        let mut stable = true;
        for beta in 0..=4 {
            let rep = h_envelope_check(dim, beta, &radii)?;
            worst = worst.max(rep.relative_change);
            stable &= rep.stable;
            sups.push(rep.sup);
            if beta == 0 {
                out.tables.push(Table::pairs(
                    format!("h_envelope_d={dim}"),
                    "r",
                    "weighted_modulus",
                    rep.samples,
                ));
            }
        }
        out.cases.push(Case::new(
            format!("envelope/d={dim}"),
            json!({ "dim": dim, "derivative_orders": [0, 1, 2, 3, 4], "radii": [1.0, 100.0], "points": radii.len(), "seed": seed }),
            json!({ "sup_weighted": sups, "max_relative_change_under_refinement": worst }),
            json!({ "finite": true, "max_relative_change": displab::dunkl::STABILITY_TOLERANCE }),
            ANCHOR_H,
            stable,
        ));
    }
    Ok(())
}

pub fn run(cfg: &DunklConfig, seed: u64) -> CliResult<SuiteOutput> {
    let mut out = SuiteOutput::default();
    bessel_cases(cfg, seed, &mut out)?;
    transform_cases(seed, &mut out)?;
    decay_cases(cfg, seed, &mut out)?;
    envelope_cases(cfg, seed, &mut out)?;
    Ok(out)
}
