//! Admissible exponent regions, scaling round trips and the classical and
//! Euclidean reductions.

use std::collections::HashSet;

use num_rational::Ratio;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use displab::admissibility::{
    admissible_region, check_admissible, classical_diagonal_condition, scaling_residual, solve_scaling, Context,
    PartialSelection,
};

use crate::config::{parse_rational, AdmissibleConfig};
use crate::error::{CliError, CliResult};
use crate::record::{Case, SuiteOutput, Table};

type Q = Ratio<i64>;

const ANCHOR_REGION: &str = "admissibility: 2/q <= (M - k)(1/2 - 1/r) + k(1/2 - 1/r~)";
const ANCHOR_DUNKL_REGION: &str = "admissibility: 2/q <= (d + 2 gamma1 - k)(1/2 - 1/r) + (k + 2 gamma2)(1/2 - 1/r~)";
const ANCHOR_CLASSICAL: &str = "on r = r~ with M = d the region is 2/q <= d(1/2 - 1/r)";
const ANCHOR_COLLAPSE: &str = "gamma1 = gamma2 = 0 reduces the weighted region to the Euclidean one";
const ANCHOR_ROUND_TRIP: &str = "scaling identity: m/q + s = (d - k)(1/2 - 1/r) + k(1/2 - 1/r~)";
const ROUND_TRIP_TOL: f64 = 1e-12;

struct Region {
    label: String,
    ctx: Context<Q>,
    k: usize,
}

fn region_table(region: &Region, res: u32) -> (Table, usize) {
    let points = admissible_region(&region.ctx, region.k, res);
    let f = |r: Q| *r.numer() as f64 / *r.denom() as f64;
    let rows = points
        .iter()
        .map(|p| vec![f(p.inv_q), f(p.inv_r), f(p.inv_rt)])
        .collect();
    let table = Table {
        name: format!("region_{}", region.label),
        columns: vec!["inv_q".into(), "inv_r".into(), "inv_r_tilde".into()],
        rows,
    };
    (table, points.len())
}

/// Every region point must pass the check again and every excluded lattice
/// point must fail it.
fn region_consistent(region: &Region, res: u32) -> (usize, usize) {
    let points: HashSet<_> = admissible_region(&region.ctx, region.k, res)
        .into_iter()
        .map(|p| (p.inv_q, p.inv_r, p.inv_rt))
        .collect();
    let step = |i: i64| Q::new(i, res as i64);
    let half = (res / 2) as i64;
    let mut lattice = 0usize;
    let mut mismatches = 0usize;
    for iq in 0..half {
        for ir in 1..=half {
            for irt in ir..=half {
                lattice += 1;
                let inside = points.contains(&(step(iq), step(ir), step(irt)));
                let Ok(sel) = displab::admissibility::ExponentSelection::new(
                    step(iq),
                    step(ir),
                    step(irt),
                    Q::from_integer(0),
                    region.k,
                ) else {
                    mismatches += usize::from(inside);
                    continue;
                };
                if inside != check_admissible(&region.ctx, &sel).verdict.is_admissible() {
                    mismatches += 1;
                }
            }
        }
    }
    (lattice, mismatches)
}

fn regions(cfg: &AdmissibleConfig) -> CliResult<Vec<Region>> {
    let mut out = Vec::new();
    for &d in &cfg.dims {
        for m in &cfg.degrees {
            let degree = parse_rational(m)?;
            let rank = if degree == Q::from_integer(1) { d - 1 } else { d };
            for k in 1..=rank.min(d - 1) {
                out.push(Region {
                    label: format!("euclidean_d={d}_m={m}_k={k}"),
                    ctx: Context::euclidean(d, degree, rank),
                    k,
                });
            }
        }
    }
    for w in &cfg.dunkl {
        let q = |v: f64| {
            Ratio::approximate_float(v).ok_or_else(|| CliError::Config(format!("weight {v} is not representable")))
        };
        let (degree, g1, g2) = (q(w.degree)?, q(w.gamma1)?, q(w.gamma2)?);
        for k in 1..w.dim {
            out.push(Region {
                label: format!("dunkl_d={}_m={}_g1={}_g2={}_k={k}", w.dim, w.degree, w.gamma1, w.gamma2),
                ctx: Context::dunkl(w.dim, degree, g1, g2),
                k,
            });
        }
    }
    Ok(out)
}

pub fn run(cfg: &AdmissibleConfig, seed: u64) -> CliResult<SuiteOutput> {
    if cfg.resolution < 2 || !cfg.resolution.is_multiple_of(2) {
        return Err(CliError::Config(format!(
            "resolution {} must be even and positive",
            cfg.resolution
        )));
    }
    if cfg.dims.iter().any(|&d| d < 2) {
        return Err(CliError::Config("dimensions must be at least 2".into()));
    }
    let res = cfg.resolution;
    let mut out = SuiteOutput::default();

    for region in regions(cfg)? {
        let (table, count) = region_table(&region, res);
        let (lattice, mismatches) = region_consistent(&region, res);
        let dunkl = matches!(region.ctx.geometry, displab::admissibility::Geometry::Dunkl { .. });
        out.tables.push(table);
        out.cases.push(Case::new(
            format!("region/{}", region.label),
            json!({ "context": region.label, "k": region.k, "resolution": res, "seed": seed }),
            json!({ "admissible_points": count, "lattice_points": lattice, "mismatches": mismatches }),
            json!({ "mismatches": 0 }),
            if dunkl { ANCHOR_DUNKL_REGION } else { ANCHOR_REGION },
            mismatches == 0,
        ));
    }

    for &d in &cfg.dims {
        let ctx = Context::euclidean(d, Q::from_integer(2), d);
        let region = admissible_region(&ctx, 1, res);
        let diagonal: HashSet<_> = region
            .iter()
            .filter(|p| p.inv_r == p.inv_rt)
            .map(|p| (p.inv_q, p.inv_r))
            .collect();
        let step = |i: i64| Q::new(i, res as i64);
        let mut mismatches = 0usize;
        for iq in 0..(res / 2) as i64 {
            for ir in 1..=(res / 2) as i64 {
                let (q, r) = (step(iq), step(ir));
                let inside = diagonal.contains(&(q, r));
                if inside != classical_diagonal_condition(d, q, r) {
                    mismatches += 1;
                }
            }
        }
        out.cases.push(Case::new(
            format!("classical-diagonal/d={d}"),
            json!({ "dim": d, "degree": 2, "rank": d, "k": 1, "resolution": res, "seed": seed }),
            json!({ "mismatches": mismatches }),
            json!({ "mismatches": 0 }),
            ANCHOR_CLASSICAL,
            mismatches == 0,
        ));

        let zero = Q::from_integer(0);
        let weighted = admissible_region(&Context::dunkl(d, Q::from_integer(2), zero, zero), 1, res);
        out.cases.push(Case::new(
            format!("dunkl-collapse/d={d}"),
            json!({ "dim": d, "gamma1": 0, "gamma2": 0, "k": 1, "resolution": res, "seed": seed }),
            json!({ "weighted_points": weighted.len(), "euclidean_points": region.len() }),
            json!({ "identical": true }),
            ANCHOR_COLLAPSE,
            weighted == region,
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut solved, mut draws, mut worst) = (0usize, 0usize, 0.0f64);
    let max_draws = cfg.round_trips.saturating_mul(100).max(1000);
    while solved < cfg.round_trips && draws < max_draws {
        draws += 1;
        let d = rng.random_range(2..=5usize);
        let m: f64 = [1.0, 2.0, 3.0, 4.0, 1.5][rng.random_range(0..5usize)];
        let ctx = if rng.random_bool(0.5) {
            Context::euclidean(d, m, if m == 1.0 { d - 1 } else { d })
        } else {
            Context::dunkl(d, m, rng.random_range(0.0..2.0), rng.random_range(0.0..2.0))
        };
        let mut part = PartialSelection {
            inv_q: Some(rng.random_range(0.0..0.5)),
            inv_r: Some(rng.random_range(0.01..0.3)),
            inv_rt: Some(rng.random_range(0.3..0.5)),
            s: Some(rng.random_range(0.0..1.0)),
            k: rng.random_range(1..=d - 1),
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
    out.cases.push(Case::new(
        "scaling-round-trip",
        json!({ "target": cfg.round_trips, "dims": [2, 5], "degrees": [1.0, 2.0, 3.0, 4.0, 1.5], "seed": seed }),
        json!({ "solved": solved, "draws": draws, "max_abs_residual": worst }),
        json!({ "solved": cfg.round_trips, "tolerance": ROUND_TRIP_TOL }),
        ANCHOR_ROUND_TRIP,
        solved == cfg.round_trips && worst <= ROUND_TRIP_TOL,
    ));
    Ok(out)
}
