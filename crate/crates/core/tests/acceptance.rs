//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Tolerances and runtime budgets are
//! pinned below.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use displab::admissibility::{
    admissible_region, classical_diagonal_condition, scaling_residual, picard_exponents, solve_scaling, Context,
    DegreeHypothesis, PartialSelection, PicardOutcome, WindowVariant,
};
use displab::dunkl::{
    bessel_j, verify_dunkl_decay, BesselJ, BesselOrder, DunklParams, RadialPhase, RadialTransform, Regime,
};
use displab::fourier::{continuum_transform, forward_transform, inverse_transform};
use displab::kernel::{
    auto_grid, fit_decay, probe_hessian_rank, verify_decay_rates, verify_partial_decay, DecayPolicy, DecayVerification,
    NormPair, ProbeMode,
};
use displab::littlewood_paley::{lp_project_spectrum, square_function_bounds, LpStack};
use displab::propagator::Propagator;
use displab::solver::{
    existence_time_search, horizon_scaling_check, NonlinearForm, NonlinearSpec, PicardConfig, SolverExponents,
};
use displab::strichartz::{scaling_check, strichartz_quotient, StrichartzExponents, TimeWindow, WavePacket};
use displab::{Complex, Field64, Grid64, Symbol64};

type Outcome = Result<(bool, String), String>;

const SEED: u64 = 0x5eed_2024;

// Criterion 1.
const UNITARY_CASES: usize = 100;
const UNITARY_TOL: f64 = 1e-12;
// Criterion 2.
const LP_IDENTITY_TOL: f64 = 1e-12;
const LP_ORTHOGONALITY_TOL: f64 = 1e-12;
const SQUARE_FUNCTION_MAX: f64 = 1.01;
// Criterion 3.
const DECAY_MIN_POINTS: usize = 512;
const LATE_WINDOW_START: f64 = 16.0;
// Criterion 5.
const SCALING_BAND: (f64, f64) = (0.98, 1.02);
const SCALING_PACKETS: usize = 20;
const TRIVIAL_TOL: f64 = 1e-12;
// Criterion 6.
const FAMILY_SIZE: usize = 50;
const FAMILY_STABILITY: f64 = 0.05;
// Criterion 7.
const RHO_TARGET: f64 = 0.5;
const HALVING_MARGIN: f64 = 0.3;
// Criterion 8.
const BESSEL_CLOSED_FORM_TOL: f64 = 1e-10;
const RECURRENCE_TOL: f64 = 1e-6;
const RECURRENCE_STEP: f64 = 1e-3;
const TRANSFORM_TOL: f64 = 1e-6;
const DUNKL_EXPONENT_TOL: f64 = 0.15;
const FAR_FIT_MAX: f64 = -3.0;
// Criterion 9.
const ROUND_TRIPS: usize = 10_000;
const ROUND_TRIP_TOL: f64 = 1e-12;
const LATTICE: u32 = 48;

fn run(id: usize, name: &str, budget: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let within = elapsed <= budget;
    let (pass, detail) = match outcome {
        Ok((ok, detail)) => (ok && within, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    println!(
        "[{}] {id}. {name} ({:.1} s of {} s): {detail}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    pass
}

fn err(e: displab::Error) -> String {
    e.to_string()
}

fn random_field(grid: &Grid64, rng: &mut ChaCha8Rng) -> Field64 {
    Field64::from_fn(grid.clone(), |_| {
        Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
    .expect("grid-sized field")
}

fn unitarity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    // Max frequency near 5.7 keeps t * Phi small enough for 1e-12 phase arithmetic.
    let grid = Grid64::new(2, 1, 100.0, 256).map_err(err)?;
    let symbols = [
        Symbol64::schrodinger(2),
        Symbol64::wave(2),
        Symbol64::biharmonic(2),
        Symbol64::fractional_power(3.0, 2),
    ];
    let (mut l2, mut group) = (0.0f64, 0.0f64);
    for case in 0..UNITARY_CASES {
        let symbol = if case % 5 == 4 {
            Symbol64::fractional_power(rng.random_range(1.0..4.0), 2)
        } else {
            symbols[case % 5].clone()
        };
        let prop = Propagator::new(&grid, &symbol).map_err(err)?;
        let f = random_field(&grid, &mut rng);
        let (t1, t2) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let u1 = prop.apply(&f, t1).map_err(err)?;
        let u12 = prop.apply(&u1, t2).map_err(err)?;
        let direct = prop.apply(&f, t1 + t2).map_err(err)?;
        l2 = l2.max((u1.l2_norm() / f.l2_norm() - 1.0).abs());
        group = group.max(u12.max_abs_diff(&direct).map_err(err)? / f.max_abs());
    }
    Ok((
        l2 <= UNITARY_TOL && group <= UNITARY_TOL,
        format!("{UNITARY_CASES} cases, max L2 drift {l2:.2e}, max group-law error {group:.2e} (tol {UNITARY_TOL:e})"),
    ))
}

fn littlewood_paley() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let grid = Grid64::new(2, 1, 32.0, 256).map_err(err)?;
    let stack = LpStack::for_grid(&grid);
    let f = random_field(&grid, &mut rng);
    let spec = forward_transform(&f);
    let pieces: Vec<_> = stack
        .indices()
        .map(|j| lp_project_spectrum(&spec, j, &stack))
        .collect::<Result<_, _>>()
        .map_err(err)?;

    // Identity: the pieces resum to f minus its mean.
    let mut sum = vec![Complex::new(0.0, 0.0); grid.len()];
    for p in &pieces {
        for (s, c) in sum.iter_mut().zip(p.coefficients()) {
            *s += c;
        }
    }
    let mut coeffs = spec.coefficients().to_vec();
    coeffs[0] = Complex::new(0.0, 0.0);
    let identity = sum.iter().zip(&coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
        / coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);

    // Quasi-orthogonality: separated projections annihilate each other.
    let mut orthogonality = 0.0f64;
    for (a, j) in stack.indices().enumerate() {
        for l in stack.indices().filter(|l| (j - l).abs() > 1) {
            let pp = lp_project_spectrum(&pieces[a], l, &stack).map_err(err)?;
            orthogonality = orthogonality.max(inverse_transform(&pp).max_abs() / f.max_abs());
        }
    }

    // Square function on random fields and on single modes across one
    // dyadic period, where sum psi_j^2 is smallest.
    let square_ratio = |g: &Field64| -> Result<f64, String> {
        let s = forward_transform(g);
        let mut sq = vec![0.0; grid.len()];
        for j in stack.indices() {
            let piece = inverse_transform(&lp_project_spectrum(&s, j, &stack).map_err(err)?);
            for (acc, v) in sq.iter_mut().zip(piece.values()) {
                *acc += v.norm_sqr();
            }
        }
        let sf = sq.iter().sum::<f64>().sqrt();
        let norm = g.values().iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        Ok((sf / norm).max(norm / sf))
    };
    let mut constant = 1.0f64;
    for _ in 0..4 {
        constant = constant.max(square_ratio(&random_field(&grid, &mut rng))?);
    }
    let step = grid.frequency_step();
    let first = (1.0 / step).ceil() as i64;
    let last = (2.0 / step).floor() as i64;
    for mode in first..=last {
        let zeta = mode as f64 * step;
        let g = Field64::from_fn(grid.clone(), |x| Complex::from_polar(1.0, zeta * x[0])).map_err(err)?;
        constant = constant.max(square_ratio(&g)?);
    }
    let (lo, _) = square_function_bounds(4096);
    let sharp = lo.recip().sqrt();
    let pass = identity <= LP_IDENTITY_TOL && orthogonality <= LP_ORTHOGONALITY_TOL && constant <= SQUARE_FUNCTION_MAX;
    Ok((
        pass,
        format!(
            "identity {identity:.1e}, separated products {orthogonality:.1e}, square-function constant {constant:.4} \
             (limit {SQUARE_FUNCTION_MAX}; min sum psi_j^2 = {lo:.4} forces >= {sharp:.4})"
        ),
    ))
}

fn late_fit(v: &DecayVerification) -> String {
    let tail: Vec<_> = v.samples.iter().copied().filter(|s| s.0 >= LATE_WINDOW_START).collect();
    match fit_decay(&tail) {
        Ok(fit) => format!("{:.3}", fit.exponent),
        Err(e) => format!("n/a ({e})"),
    }
}

fn kernel_decay() -> Outcome {
    let policy = DecayPolicy::default();
    let mut lines = Vec::new();
    let mut pass = true;
    let mut record = |label: &str, v: DecayVerification| {
        pass &= v.pass && v.points >= DECAY_MIN_POINTS;
        lines.push(format!(
            "{label} fit {:.3} vs {} (n={}, [{}, {}] tail fit {})",
            v.fit.exponent,
            v.predicted,
            v.points,
            LATE_WINDOW_START,
            policy.t_max,
            late_fit(&v)
        ));
    };
    for (label, symbol) in [
        ("|xi|^2", Symbol64::schrodinger(2)),
        ("|xi|^4", Symbol64::biharmonic(2)),
        ("|xi|", Symbol64::wave(2)),
    ] {
        let grid = auto_grid(&symbol, 2, 1, policy.t_max).map_err(err)?;
        record(
            label,
            verify_decay_rates(&symbol, &grid, NormPair::SupSup, &policy).map_err(err)?,
        );
    }
    let symbol = Symbol64::schrodinger(2);
    let grid = auto_grid(&symbol, 1, 1, policy.t_max).map_err(err)?;
    record(
        "frozen eta=0.5",
        verify_partial_decay(&symbol, &grid, &[0.5], &policy).map_err(err)?,
    );
    Ok((pass, format!("tol {}: {}", policy.tolerance, lines.join("; "))))
}

fn hessian_ranks() -> Outcome {
    let mut cases: Vec<(String, Symbol64, usize, ProbeMode)> = Vec::new();
    for d in [2, 3] {
        for m in [1.5, 2.0, 3.0, 4.0] {
            cases.push((
                format!("|xi|^{m} d={d}"),
                Symbol64::fractional_power(m, d),
                d,
                ProbeMode::Full,
            ));
        }
        cases.push((format!("|xi| d={d}"), Symbol64::wave(d), d, ProbeMode::Full));
    }
    for eta in [vec![0.5], vec![0.3], vec![0.3, 0.4]] {
        let d = if eta.len() == 1 && eta[0] == 0.5 { 2 } else { 3 };
        cases.push((
            format!("biharmonic d={d} k={}", eta.len()),
            Symbol64::biharmonic(d),
            d,
            ProbeMode::Frozen { eta },
        ));
    }
    let mut pass = true;
    let mut summary = Vec::new();
    for (label, symbol, d, mode) in cases {
        let p = probe_hessian_rank(&symbol, d, &mode).map_err(err)?;
        let exact = p.ranks.iter().all(|&r| r == p.declared);
        pass &= p.violations == 0 && exact && p.points.len() == 64;
        summary.push(format!("{label}: rank {} ({} violations)", p.declared, p.violations));
    }
    Ok((pass, summary.join(", ")))
}

fn packet(rng: &mut ChaCha8Rng, bands: (i32, i32), shift: f64) -> WavePacket<f64> {
    let angle = rng.random_range(0.0..2.0 * PI);
    WavePacket {
        band: rng.random_range(bands.0..=bands.1),
        direction: vec![angle.cos(), angle.sin()],
        width: rng.random_range(0.2..0.5),
        shift: vec![rng.random_range(-shift..shift), rng.random_range(-shift..shift)],
    }
}

fn scale_invariant_selections() -> Result<Vec<StrichartzExponents<f64>>, String> {
    // Schrodinger at d = 2, k = 1: s from the scaling identity.
    let ctx = Context::euclidean(2, Ratio::from_integer(2i64), 2);
    let r = |n: i64, d: i64| Some(Ratio::new(n, d));
    let mut out = Vec::new();
    for (q, rr, rt) in [
        (r(1, 4), r(1, 4), r(1, 4)),
        (r(1, 8), r(1, 4), r(1, 4)),
        (r(0, 1), r(1, 4), r(1, 2)),
    ] {
        let sel = solve_scaling(
            &ctx,
            &PartialSelection {
                inv_q: q,
                inv_r: rr,
                inv_rt: rt,
                s: None,
                k: 1,
            },
        )
        .map_err(err)?;
        if !displab::admissibility::check_admissible(&ctx, &sel)
            .verdict
            .is_admissible()
        {
            return Err(format!("selection {sel} is not admissible"));
        }
        out.push(StrichartzExponents::from_selection(&sel));
    }
    Ok(out)
}

fn strichartz_scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let grid = Grid64::new(2, 1, 64.0, 512).map_err(err)?;
    let symbol = Symbol64::schrodinger(2);
    let window = TimeWindow {
        horizon: 8.0,
        samples: 17,
    };
    let selections = scale_invariant_selections()?;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..SCALING_PACKETS {
        let f = packet(&mut rng, (-1, 1), 8.0).field(&grid).map_err(err)?;
        for exps in &selections[..2] {
            for delta in [0.5, 2.0] {
                let c = scaling_check(&f, &symbol, exps, &window, delta).map_err(err)?;
                lo = lo.min(c.ratio);
                hi = hi.max(c.ratio);
            }
        }
    }
    let trivial = StrichartzExponents::new(f64::INFINITY, 2.0, 2.0, 0.0);
    let mut trivial_err = 0.0f64;
    for _ in 0..5 {
        let f = packet(&mut rng, (-2, 2), 8.0).field(&grid).map_err(err)?;
        let q = strichartz_quotient(&f, &symbol, &trivial, &window).map_err(err)?;
        trivial_err = trivial_err.max((q.ratio - 1.0).abs());
    }
    let pass = lo >= SCALING_BAND.0 && hi <= SCALING_BAND.1 && trivial_err <= TRIVIAL_TOL;
    Ok((
        pass,
        format!(
            "R(f_delta)/R(f) in [{lo:.6}, {hi:.6}] over {SCALING_PACKETS} packets, delta in {{1/2, 2}}, \
             (q,r,r~,s) = (4,4,4,0), (8,4,4,1/4); trivial selection |R - 1| <= {trivial_err:.1e}"
        ),
    ))
}

fn strichartz_boundedness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let grid = Grid64::new(2, 1, 64.0, 512).map_err(err)?;
    let symbol = Symbol64::schrodinger(2);
    let window = TimeWindow {
        horizon: 8.0,
        samples: 17,
    };
    let exps = scale_invariant_selections()?[0];
    let mut ratios = Vec::with_capacity(2 * FAMILY_SIZE);
    for _ in 0..2 * FAMILY_SIZE {
        let f = packet(&mut rng, (-2, 2), 16.0).field(&grid).map_err(err)?;
        ratios.push(strichartz_quotient(&f, &symbol, &exps, &window).map_err(err)?.ratio);
    }
    let max_of = |s: &[f64]| s.iter().copied().fold(0.0, f64::max);
    let (small, large) = (max_of(&ratios[..FAMILY_SIZE]), max_of(&ratios));
    let change = (large - small) / small;
    Ok((
        change <= FAMILY_STABILITY,
        format!(
            "max R {small:.5} over {FAMILY_SIZE}, {large:.5} over {}: change {:.2}% (limit {}%)",
            2 * FAMILY_SIZE,
            100.0 * change,
            100.0 * FAMILY_STABILITY
        ),
    ))
}

fn picard() -> Outcome {
    let outcome = picard_exponents(
        3,
        Ratio::from_integer(3i64),
        Ratio::from_integer(1),
        Ratio::from_integer(3),
        WindowVariant::Quadratic,
        DegreeHypothesis::Strict,
    )
    .map_err(err)?;
    let PicardOutcome::Feasible(pe) = outcome else {
        return Err(format!("exponents infeasible: {outcome:?}"));
    };
    let exps = SolverExponents::<f64>::from_picard(&pe, Ratio::from_integer(1));
    let grid = Grid64::new(3, 2, 8.0, 64).map_err(err)?;
    let f = Field64::from_fn(grid, |x| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        Complex::new(4.0 * (-r2 / 2.0).exp(), 0.0)
    })
    .map_err(err)?;
    let symbol = Symbol64::fractional_power(3.0, 3);
    let spec = NonlinearSpec::new(3.0, NonlinearForm::Preserving, 1.0).map_err(err)?;
    let cfg = PicardConfig {
        max_iters: 25,
        ..PicardConfig::default()
    };
    let search = existence_time_search(&f, &symbol, &spec, &exps, &cfg).map_err(err)?;
    let (Some(t), Some(rep)) = (search.t_star, search.report.as_ref()) else {
        return Ok((false, format!("no horizon accepted in {} probes", search.probes.len())));
    };
    let rho = rep.rho_hat.unwrap_or(f64::INFINITY);
    let check = horizon_scaling_check(&f, &symbol, &spec, &exps, t, &cfg, HALVING_MARGIN).map_err(err)?;
    let relative = (check.measured - exps.beta1).abs() / exps.beta1;
    let pass = rho <= RHO_TARGET && rep.differences_monotone() && relative <= HALVING_MARGIN;
    Ok((
        pass,
        format!(
            "T* = {t} after {} probes, rho = {rho:.4}; log2 rho(T)/rho(T/2) = {:.4} vs beta1 = {:.4} ({:.1}% off, limit {}%)",
            search.probes.len(),
            check.measured,
            exps.beta1,
            100.0 * relative,
            100.0 * HALVING_MARGIN
        ),
    ))
}

fn dunkl() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut closed = 0.0f64;
    for r in [0.01, 0.3, 1.0, 4.7, 13.0, 49.5, 50.5, 77.0, 300.0] {
        let want = (2.0 / (PI * r)).sqrt() * r.sin();
        closed = closed.max((bessel_j(0.5, r).map_err(err)? - want).abs());
    }
    let mut recurrence = 0.0f64;
    for _ in 0..100 {
        let nu: f64 = rng.random_range(0.0..4.0);
        let r: f64 = rng.random_range(0.5..80.0);
        let (j, j1) = (BesselJ::new(nu).map_err(err)?, BesselJ::new(nu + 1.0).map_err(err)?);
        let g = |x: f64| -> Result<f64, String> { Ok(x.powf(-nu) * j.eval(x).map_err(err)?) };
        let h = RECURRENCE_STEP;
        let derivative = (g(r + h)? - g(r - h)?) / (2.0 * h);
        recurrence = recurrence.max((derivative + r.powf(-nu) * j1.eval(r).map_err(err)?).abs());
    }

    let grid = Grid64::new(2, 1, 12.0, 128).map_err(err)?;
    let profile = |r: f64| (1.0 + r * r) * (-r * r / 2.0).exp();
    let f = Field64::from_fn(grid.clone(), |x| Complex::new(profile(x[0].hypot(x[1])), 0.0)).map_err(err)?;
    let cont = continuum_transform(&forward_transform(&f));
    let transform =
        RadialTransform::new(&profile, &DunklParams::euclidean(2), BesselOrder::Homogeneous).map_err(err)?;
    let mut zeta = [0.0; 2];
    let mut transform_err = 0.0f64;
    for flat in (0..grid.len()).step_by(997) {
        grid.frequency_at(flat, &mut zeta);
        // The grid transform is unitary; the radial transform carries (2 pi)^{N/2}.
        let want = cont[flat].re * 2.0 * PI;
        let got = transform.eval(zeta[0].hypot(zeta[1])).map_err(err)?;
        transform_err = transform_err.max((got - want).abs() / want.abs().max(1e-3));
    }

    let params = DunklParams::new(1, 1.0, 0.0, 0).map_err(err)?;
    let policy = DecayPolicy {
        tolerance: DUNKL_EXPONENT_TOL,
        ..DecayPolicy::default()
    };
    let quadratic = verify_dunkl_decay(RadialPhase::Power(2.0), &params, Regime::Ray(2.0), &policy).map_err(err)?;
    let linear = verify_dunkl_decay(RadialPhase::Power(1.0), &params, Regime::Ray(1.0), &policy).map_err(err)?;
    let far = verify_dunkl_decay(RadialPhase::Power(2.0), &params, Regime::Far, &policy).map_err(err)?;
    let pass = closed <= BESSEL_CLOSED_FORM_TOL
        && recurrence <= RECURRENCE_TOL
        && transform_err <= TRANSFORM_TOL
        && quadratic.pass
        && linear.pass
        && far.fit.exponent <= FAR_FIT_MAX;
    Ok((
        pass,
        format!(
            "J_1/2 err {closed:.1e}, recurrence {recurrence:.1e}, kappa=0 transform {transform_err:.1e}; N=3 fits: \
             r^2 {:.3} vs {}, r {:.3} vs {}, far {:.2} (limit {FAR_FIT_MAX})",
            quadratic.fit.exponent, quadratic.predicted, linear.fit.exponent, linear.predicted, far.fit.exponent
        ),
    ))
}

fn admissibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let (mut solved, mut draws, mut worst) = (0usize, 0usize, 0.0f64);
    while solved < ROUND_TRIPS {
        draws += 1;
        let d = rng.random_range(2..=5usize);
        let m: f64 = [1.0, 2.0, 3.0, 4.0, 1.5][rng.random_range(0..5usize)];
        let ctx = if rng.random_bool(0.5) {
            Context::euclidean(d, m, if m == 1.0 { d - 1 } else { d })
        } else {
            Context::dunkl(d, m, rng.random_range(0.0..2.0), rng.random_range(0.0..2.0))
        };
        let k = rng.random_range(1..=d - 1);
        let mut part = PartialSelection {
            inv_q: Some(rng.random_range(0.0..0.5)),
            inv_r: Some(rng.random_range(0.01..0.3)),
            inv_rt: Some(rng.random_range(0.3..0.5)),
            s: Some(rng.random_range(0.0..1.0)),
            k,
        };
        match rng.random_range(0..5usize) {
            0 => part.inv_q = None,
            1 => part.inv_r = None,
            2 => part.inv_rt = None,
            3 => part.s = None,
            _ => (part.inv_r, part.inv_rt) = (None, None),
        }
        let Ok(sel) = solve_scaling(&ctx, &part) else { continue };
        solved += 1;
        worst = worst.max(scaling_residual(&ctx, &sel).abs());
    }

    let mut mismatches = 0usize;
    for d in 2..=5usize {
        let ctx = Context::euclidean(d, Ratio::from_integer(2i64), d);
        let region = admissible_region(&ctx, 2.min(d), LATTICE);
        let step = |i: i64| Ratio::new(i, LATTICE as i64);
        for iq in 0..(LATTICE / 2) as i64 {
            for ir in 1..=(LATTICE / 2) as i64 {
                let (q, r) = (step(iq), step(ir));
                let inside = region.iter().any(|p| p.inv_q == q && p.inv_r == r && p.inv_rt == r);
                if inside != classical_diagonal_condition(d, q, r) {
                    mismatches += 1;
                }
            }
        }
    }
    Ok((
        worst <= ROUND_TRIP_TOL && mismatches == 0,
        format!(
            "{ROUND_TRIPS} solved selections ({draws} draws), max scaling residual {worst:.1e}; \
             diagonal vs classical region on the 1/{LATTICE} lattice, d = 2..5: {mismatches} mismatches"
        ),
    ))
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "unitarity and group law", secs(10), unitarity),
        run(2, "Littlewood-Paley suite", secs(10), littlewood_paley),
        run(3, "kernel decay", secs(300), kernel_decay),
        run(4, "Hessian rank probes", secs(60), hessian_ranks),
        run(5, "Strichartz scaling invariance", secs(180), strichartz_scaling),
        run(6, "Strichartz boundedness surrogate", secs(300), strichartz_boundedness),
        run(7, "Picard contraction", secs(600), picard),
        run(8, "Dunkl suite", secs(300), dunkl),
        run(9, "admissibility round-trip", secs(5), admissibility),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
