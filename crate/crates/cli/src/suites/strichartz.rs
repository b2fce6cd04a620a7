//! Strichartz quotients of seeded wave-packet families: boundedness
//! surrogate, dyadic scaling and the Plancherel selection.

use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use displab::admissibility::{check_admissible, solve_scaling, Context, ExponentSelection, PartialSelection};
use displab::littlewood_paley::rescale_field;
use displab::strichartz::{strichartz_quotient, StrichartzExponents, TimeWindow, WavePacket};
use displab::{Field64, Grid64, Symbol64};

use crate::config::{parse_rational, parse_reciprocal, to_f64, SelectionConfig, StrichartzConfig};
use crate::error::{CliError, CliResult};
use crate::record::{Case, SuiteOutput, Table};

const ANCHOR_BOUND: &str =
    "Strichartz estimate: ||e^{itPhi(D)} f||_{L^q_t L^r_x L^r~_y} <= C ||f||_{H-dot^s} for admissible (q, r, r~, s)";
const ANCHOR_SCALING: &str = "scaling: R(f_delta) = delta^{-(m/q + s - (d-k)(1/2-1/r) - k(1/2-1/r~))} R(f)";
const ANCHOR_PLANCHEREL: &str = "Plancherel: ||e^{itPhi(D)} f||_{L^2} = ||f||_{L^2}";
const PLANCHEREL_TOL: f64 = 1e-12;

struct Resolved {
    label: String,
    selection: ExponentSelection<f64>,
    exps: StrichartzExponents<f64>,
}

fn resolve(sel: &SelectionConfig, ctx: &Context<f64>, split: usize) -> CliResult<Resolved> {
    let (inv_q, inv_r, inv_rt) = (
        parse_reciprocal(&sel.q)?,
        parse_reciprocal(&sel.r)?,
        parse_reciprocal(&sel.r_tilde)?,
    );
    let solved = solve_scaling(
        ctx,
        &PartialSelection {
            inv_q: Some(inv_q),
            inv_r: Some(inv_r),
            inv_rt: Some(inv_rt),
            s: None,
            k: split,
        },
    )
    .map_err(|e| CliError::Config(format!("selection {}: {e}", sel.label())))?;
    if let Some(s) = &sel.s {
        let s = to_f64(parse_rational(s)?);
        if (s - solved.s()).abs() > 1e-12 {
            return Err(CliError::Config(format!(
                "selection {} is not scale invariant: s = {s}, scaling requires {}",
                sel.label(),
                solved.s()
            )));
        }
    }
    let verdict = check_admissible(ctx, &solved).verdict;
    if !verdict.is_admissible() {
        return Err(CliError::Config(format!(
            "selection {} is not admissible: {verdict:?}",
            sel.label()
        )));
    }
    Ok(Resolved {
        label: sel.label(),
        selection: solved,
        exps: StrichartzExponents::from_selection(&solved),
    })
}

fn packet(rng: &mut ChaCha8Rng, cfg: &StrichartzConfig) -> WavePacket<f64> {
    let d = cfg.grid.dim;
    // Uniform direction from normalized Gaussian coordinates.
    let direction: Vec<f64> = (0..d)
        .map(|_| {
            let (u, v): (f64, f64) = (rng.random_range(1e-12..1.0), rng.random_range(0.0..1.0));
            (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
        })
        .collect();
    WavePacket {
        band: rng.random_range(cfg.bands[0]..=cfg.bands[1]),
        direction,
        width: rng.random_range(cfg.width[0]..cfg.width[1]),
        shift: (0..d).map(|_| rng.random_range(-cfg.shift..cfg.shift)).collect(),
    }
}

/// `R(f)` for each selection, and the rescaled quotients when requested.
struct PacketResult {
    ratios: Vec<f64>,
    /// Per selection, `(delta, R(f_delta) / R(f))`.
    scaling: Vec<Vec<(f64, f64)>>,
    plancherel: Option<f64>,
}

fn measure(
    f: &Field64,
    symbol: &Symbol64,
    selections: &[Resolved],
    window: &TimeWindow<f64>,
    scaled: bool,
    plancherel: bool,
) -> displab::Result<PacketResult> {
    let mut ratios = Vec::with_capacity(selections.len());
    let mut scaling = Vec::new();
    for sel in selections {
        let r = strichartz_quotient(f, symbol, &sel.exps, window)?.ratio;
        ratios.push(r);
        if scaled {
            let mut row = Vec::new();
            for delta in [0.5, 2.0] {
                let f_delta = rescale_field(f, delta)?;
                let w = TimeWindow {
                    horizon: window.horizon / delta.powf(symbol.degree()),
                    samples: window.samples,
                };
                row.push((delta, strichartz_quotient(&f_delta, symbol, &sel.exps, &w)?.ratio / r));
            }
            scaling.push(row);
        }
    }
    let plancherel = if plancherel {
        let trivial = StrichartzExponents::new(f64::INFINITY, 2.0, 2.0, 0.0);
        Some(strichartz_quotient(f, symbol, &trivial, window)?.ratio)
    } else {
        None
    };
    Ok(PacketResult {
        ratios,
        scaling,
        plancherel,
    })
}

pub fn run(cfg: &StrichartzConfig, seed: u64) -> CliResult<SuiteOutput> {
    let g = &cfg.grid;
    let grid = Grid64::new(g.dim, g.split, g.half_length, g.points)?;
    let symbol = cfg.symbol.build(g.dim);
    let ctx = Context::euclidean(g.dim, symbol.degree(), symbol.hessian_rank());
    let selections = cfg
        .selections
        .iter()
        .map(|s| resolve(s, &ctx, g.split))
        .collect::<CliResult<Vec<_>>>()?;
    if cfg.packets == 0 || cfg.samples < 2 {
        return Err(CliError::Config("need at least one packet and two time samples".into()));
    }
    let window = TimeWindow {
        horizon: cfg.horizon,
        samples: cfg.samples,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family: Vec<WavePacket<f64>> = (0..2 * cfg.packets).map(|_| packet(&mut rng, cfg)).collect();
    let results = family
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let f = p.field(&grid)?;
            measure(
                &f,
                &symbol,
                &selections,
                &window,
                i < cfg.scaling_packets,
                i < cfg.plancherel_packets,
            )
        })
        .collect::<displab::Result<Vec<_>>>()?;

    let base_inputs = |label: &str, sel: Option<&Resolved>| {
        json!({
            "selection": label,
            "s": sel.map(|s| s.selection.s()),
            "symbol": cfg.symbol.label(),
            "grid": [g.dim, g.split, g.half_length, g.points],
            "window": [0.0, cfg.horizon],
            "time_samples": cfg.samples,
            "bands": cfg.bands,
            "seed": seed,
        })
    };
    let mut out = SuiteOutput::default();
    for (k, sel) in selections.iter().enumerate() {
        let ratios: Vec<f64> = results.iter().map(|r| r.ratios[k]).collect();
        let max_of = |s: &[f64]| s.iter().copied().fold(0.0, f64::max);
        let (small, large) = (max_of(&ratios[..cfg.packets]), max_of(&ratios));
        let change = (large - small) / small;
        let mut inputs = base_inputs(&sel.label, Some(sel));
        inputs["packets"] = json!([cfg.packets, 2 * cfg.packets]);
        out.cases.push(Case::new(
            format!("{}/boundedness", sel.label),
            inputs,
            json!({ "max_r": small, "max_r_doubled": large, "relative_change": change }),
            json!({ "max_relative_change": cfg.stability }),
            ANCHOR_BOUND,
            change.abs() <= cfg.stability,
        ));
        out.tables.push(Table::pairs(
            format!("{}_quotients", sel.label),
            "packet",
            "R",
            ratios.iter().enumerate().map(|(i, &r)| (i as f64, r)),
        ));
        for (j, delta) in [0.5, 2.0].into_iter().enumerate() {
            let values: Vec<f64> = results
                .iter()
                .filter_map(|r| r.scaling.get(k).map(|row| row[j].1))
                .collect();
            if values.is_empty() {
                continue;
            }
            let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = values.iter().copied().fold(0.0, f64::max);
            let mut inputs = base_inputs(&sel.label, Some(sel));
            inputs["delta"] = json!(delta);
            inputs["packets"] = json!(values.len());
            out.cases.push(Case::new(
                format!("{}/scaling/delta={delta}", sel.label),
                inputs,
                json!({ "min_ratio": lo, "max_ratio": hi }),
                json!({ "ratio": 1.0, "band": cfg.ratio_band }),
                ANCHOR_SCALING,
                lo >= cfg.ratio_band[0] && hi <= cfg.ratio_band[1],
            ));
        }
    }
    let plancherel: Vec<f64> = results.iter().filter_map(|r| r.plancherel).collect();
    if !plancherel.is_empty() {
        let worst = plancherel.iter().map(|r| (r - 1.0).abs()).fold(0.0, f64::max);
        let mut inputs = base_inputs("q=inf,r=2,rt=2", None);
        inputs["packets"] = json!(plancherel.len());
        out.cases.push(Case::new(
            "plancherel",
            inputs,
            json!({ "max_abs_deviation": worst }),
            json!({ "ratio": 1.0, "tolerance": PLANCHEREL_TOL }),
            ANCHOR_PLANCHEREL,
            worst <= PLANCHEREL_TOL,
        ));
    }
    Ok(out)
}
