//! Decay-rate verification of frequency-localized kernels.

use rayon::prelude::*;
use serde_json::json;

use displab::kernel::{auto_grid, fit_decay, verify_decay_rates, verify_partial_decay, DecayVerification, NormPair};

use crate::config::{DecayCase, DecayConfig, PairSpec};
use crate::error::CliResult;
use crate::record::{Case, SuiteOutput, Table};

const ANCHOR_FULL: &str = "fixed-time decay: ||P_0 e^{itPhi(D)}||_{L^1 -> L^inf} <= C (1 + |t|)^{-M/2}";
const ANCHOR_L2: &str =
    "fixed-time decay: ||P_0 e^{itPhi(D)}||_{L^1_x L^2_y -> L^inf_x L^2_y} <= C (1 + |t|)^{-(M-k)/2}";
const ANCHOR_PARTIAL: &str = "frozen-eta kernel: sup |K(x, t; eta)| <= C (1 + |t|)^{-(M-k)/2}";

fn case_id(c: &DecayCase) -> String {
    let pair = match c.pair {
        PairSpec::SupSup => "sup-sup",
        PairSpec::SupL2 => "sup-l2",
    };
    if c.eta.is_empty() {
        format!("{}/d={}/k={}/{pair}", c.symbol.label(), c.dim, c.split)
    } else {
        format!("{}/d={}/frozen-eta={:?}", c.symbol.label(), c.dim, c.eta)
    }
}

fn verify(c: &DecayCase, cfg: &DecayConfig) -> displab::Result<DecayVerification> {
    let policy = cfg.policy.policy();
    let symbol = c.symbol.build(c.dim);
    if c.eta.is_empty() {
        let grid = auto_grid(&symbol, c.dim, c.split, policy.t_max)?;
        let pair = match c.pair {
            PairSpec::SupSup => NormPair::SupSup,
            PairSpec::SupL2 => NormPair::SupL2,
        };
        verify_decay_rates(&symbol, &grid, pair, &policy)
    } else {
        let dx = c
            .dim
            .checked_sub(c.eta.len())
            .filter(|&v| v > 0)
            .ok_or(displab::Error::DimensionMismatch {
                expected: c.dim.saturating_sub(1),
                got: c.eta.len(),
            })?;
        let grid = auto_grid(&symbol, dx, 1.min(dx), policy.t_max)?;
        verify_partial_decay(&symbol, &grid, &c.eta, &policy)
    }
}

fn run_case(index: usize, c: &DecayCase, cfg: &DecayConfig, seed: u64) -> (Case, Option<Table>) {
    let id = case_id(c);
    let anchor = match (c.eta.is_empty(), c.pair) {
        (false, _) => ANCHOR_PARTIAL,
        (true, PairSpec::SupSup) => ANCHOR_FULL,
        (true, PairSpec::SupL2) => ANCHOR_L2,
    };
    let inputs = json!({
        "symbol": c.symbol.label(),
        "dim": c.dim,
        "split": c.split,
        "eta": c.eta,
        "window": [cfg.policy.t_min, cfg.policy.t_max],
        "samples": cfg.policy.samples,
        "seed": seed,
    });
    match verify(c, cfg) {
        Ok(v) => {
            let tail: Vec<_> = v.samples.iter().copied().filter(|s| s.0 >= cfg.tail_start).collect();
            let tail_fit = fit_decay(&tail).ok().map(|f| f.exponent);
            let sensitive = tail_fit.is_none_or(|t| (t - v.fit.exponent).abs() > cfg.sensitivity);
            let mut inputs = inputs;
            inputs["points"] = json!(v.points);
            inputs["half_length"] = json!(v.half_length);
            let case = Case::new(
                id,
                inputs,
                json!({
                    "exponent": v.fit.exponent,
                    "max_log_residual": v.fit.max_residual,
                    "tail_window": [cfg.tail_start, cfg.policy.t_max],
                    "tail_exponent": tail_fit,
                    "pre_asymptotic": sensitive,
                }),
                json!({ "exponent": v.predicted, "tolerance": cfg.policy.tolerance }),
                anchor,
                v.pass,
            );
            let table = Table::pairs(format!("case{index}_sup"), "t", "sup", v.samples.iter().copied());
            (case, Some(table))
        }
        Err(e) => (Case::error(id, inputs, json!(null), anchor, e), None),
    }
}

pub fn run(cfg: &DecayConfig, seed: u64) -> CliResult<SuiteOutput> {
    let results: Vec<_> = cfg
        .cases
        .par_iter()
        .enumerate()
        .map(|(i, c)| run_case(i, c, cfg, seed))
        .collect();
    let mut out = SuiteOutput::default();
    for (case, table) in results {
        out.cases.push(case);
        out.tables.extend(table);
    }
    Ok(out)
}
