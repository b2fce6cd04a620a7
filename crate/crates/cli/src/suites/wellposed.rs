//! Local well-posedness by Picard iteration: exponent selection, existence
//! horizon, horizon scaling of the contraction factor.

use num_rational::Ratio;
use serde_json::json;

use displab::admissibility::{picard_exponents, DegreeHypothesis, PicardOutcome, WindowVariant};
use displab::solver::{
    existence_time_search, horizon_scaling_check, picard_solve, NonlinearForm, NonlinearSpec, PicardConfig,
    SolverExponents,
};
use displab::{Complex, Field64, Grid64};

use crate::config::{parse_rational, to_f64, FormSpec, HypothesisSpec, WellposedConfig, WindowSpec};
use crate::error::{CliError, CliResult};
use crate::record::{Case, SuiteOutput, Table};

const ANCHOR_EXPONENTS: &str = "exponent identity: m/q1 + (d-2)/r1 + 2/r~1 = d/2 with 1/r1 = 1/(p+1)";
const ANCHOR_CONTRACTION: &str = "contraction criterion: 2 C T^{beta1} A^{p-1} <= 1/2";
const ANCHOR_SCALING: &str = "contraction factor scales as T^{beta1}";
const ANCHOR_MONOTONE: &str = "contraction: d(u_{n+1}, u_{n+2}) <= rho d(u_n, u_{n+1})";
const ANCHOR_ZERO: &str = "the zero solution is the fixed point for zero data";
const IDENTITY_TOL: f64 = 1e-12;

fn data(cfg: &WellposedConfig, amplitude: f64) -> CliResult<Field64> {
    let grid = Grid64::new(cfg.dim, 2.min(cfg.dim), cfg.half_length, cfg.points)?;
    Ok(Field64::from_fn(grid, |x| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        Complex::new(amplitude * (-r2 / 2.0).exp(), 0.0)
    })?)
}

pub fn run(cfg: &WellposedConfig, seed: u64) -> CliResult<SuiteOutput> {
    let (m, p, s) = (
        parse_rational(&cfg.degree)?,
        parse_rational(&cfg.p)?,
        parse_rational(&cfg.s)?,
    );
    let variant = match cfg.window {
        WindowSpec::Quadratic => WindowVariant::Quadratic,
        WindowSpec::Linear => WindowVariant::Linear,
    };
    let hypothesis = match cfg.hypothesis {
        HypothesisSpec::Strict => DegreeHypothesis::Strict,
        HypothesisSpec::Relaxed => DegreeHypothesis::Relaxed,
    };
    let form = match cfg.form {
        FormSpec::Preserving => NonlinearForm::Preserving,
        FormSpec::Plain => NonlinearForm::Plain,
    };
    let inputs = json!({
        "dim": cfg.dim,
        "split": 2,
        "degree": cfg.degree,
        "p": cfg.p,
        "s": cfg.s,
        "grid": [cfg.half_length, cfg.points],
        "amplitude": cfg.amplitude,
        "window": format!("{:?}", cfg.window).to_lowercase(),
        "hypothesis": format!("{:?}", cfg.hypothesis).to_lowercase(),
        "seed": seed,
    });
    let mut out = SuiteOutput::default();

    let outcome = picard_exponents(cfg.dim, m, s, p, variant, hypothesis)?;
    let pe = match outcome {
        PicardOutcome::Feasible(pe) => pe,
        PicardOutcome::Infeasible { window, reason } => {
            out.cases.push(Case::new(
                "exponents",
                inputs,
                json!({ "feasible": false, "window": [to_f64(window.0), to_f64(window.1)], "reason": reason }),
                json!({ "feasible": true }),
                ANCHOR_EXPONENTS,
                false,
            ));
            return Ok(out);
        }
    };
    let residual = pe.identity_residual(cfg.dim, m);
    out.cases.push(Case::new(
        "exponents",
        inputs.clone(),
        json!({
            "epsilon": to_f64(pe.epsilon),
            "inv_q1": pe.inv_q1.to_string(),
            "inv_r1": pe.inv_r1.to_string(),
            "inv_r_tilde1": pe.inv_rt1.to_string(),
            "beta1": pe.beta1.to_string(),
            "closed_form_inv_q1": pe.closed_form_inv_q1.to_string(),
            "identity_residual": to_f64(residual),
        }),
        json!({ "identity_residual": 0.0, "tolerance": IDENTITY_TOL }),
        ANCHOR_EXPONENTS,
        to_f64(residual).abs() <= IDENTITY_TOL,
    ));

    let exps = SolverExponents::<f64>::from_picard(&pe, s);
    let symbol = displab::Symbol64::fractional_power(to_f64(m), cfg.dim);
    let spec = NonlinearSpec::new(to_f64(p), form, cfg.lambda)?;
    let config = PicardConfig {
        nodes: cfg.nodes,
        max_iters: cfg.max_iters,
        tolerance: cfg.tolerance,
    };
    let f = data(cfg, cfg.amplitude)?;

    let search = existence_time_search(&f, &symbol, &spec, &exps, &config)?;
    let probes: Vec<_> = search
        .probes
        .iter()
        .map(|p| json!({ "horizon": p.horizon, "accepted": p.accepted, "rho_hat": p.rho_hat, "iterations": p.iterations, "divergence": p.divergence }))
        .collect();
    let Some(rep) = search.report.as_ref() else {
        out.cases.push(Case::new(
            "existence",
            inputs,
            json!({ "t_star": null, "probes": probes }),
            json!({ "rho_hat_max": cfg.rho_target }),
            ANCHOR_CONTRACTION,
            false,
        ));
        return Ok(out);
    };
    let rho = rep.rho_hat.unwrap_or(f64::INFINITY);
    out.cases.push(Case::new(
        "existence",
        inputs.clone(),
        json!({
            "t_star": rep.horizon,
            "rho_hat": rep.rho_hat,
            "radius": rep.radius,
            "iterations": rep.iterations,
            "chain_rule_ratio": rep.chain_rule_ratio,
            "in_hypothesis": rep.in_hypothesis,
            "probes": probes,
        }),
        json!({ "rho_hat_max": cfg.rho_target }),
        ANCHOR_CONTRACTION,
        rho <= cfg.rho_target,
    ));
    out.tables.push(Table::pairs(
        "differences",
        "iteration",
        "distance",
        rep.differences.iter().enumerate().map(|(i, &d)| (i as f64, d)),
    ));
    out.cases.push(Case::new(
        "monotone-differences",
        inputs.clone(),
        json!({ "differences": rep.differences }),
        json!({ "non_increasing_after_first": true }),
        ANCHOR_MONOTONE,
        rep.differences_monotone(),
    ));

    let beta1 = exps.beta1;
    match horizon_scaling_check(&f, &symbol, &spec, &exps, rep.horizon, &config, cfg.margin) {
        Ok(check) => {
            let relative = (check.measured - beta1).abs() / beta1;
            out.cases.push(Case::new(
                "horizon-scaling",
                inputs.clone(),
                json!({ "horizon": check.horizon, "rho": check.rho, "rho_half": check.rho_half, "log2_ratio": check.measured, "relative_error": relative }),
                json!({ "log2_ratio": beta1, "relative_tolerance": cfg.margin }),
                ANCHOR_SCALING,
                relative <= cfg.margin,
            ));
        }
        Err(e) => out.cases.push(Case::error(
            "horizon-scaling",
            inputs.clone(),
            json!({ "log2_ratio": beta1 }),
            ANCHOR_SCALING,
            e,
        )),
    }

    let zero = data(cfg, 0.0)?;
    let rep = picard_solve(&zero, &symbol, &spec, &exps, 1.0, &config)?;
    out.cases.push(Case::new(
        "zero-data",
        inputs,
        json!({ "degenerate": rep.degenerate, "converged": rep.converged, "iterations": rep.iterations }),
        json!({ "degenerate": true, "iterations": 1 }),
        ANCHOR_ZERO,
        rep.degenerate && rep.iterations == 1,
    ));
    Ok(out)
}

/// Rejects rationals that do not fit the solver's exponent checks early.
pub fn validate(cfg: &WellposedConfig) -> CliResult<()> {
    for (name, v) in [("degree", &cfg.degree), ("p", &cfg.p), ("s", &cfg.s)] {
        let r: Ratio<i64> = parse_rational(v)?;
        if to_f64(r) <= 0.0 {
            return Err(CliError::Config(format!("{name} = {v} must be positive")));
        }
    }
    Ok(())
}
