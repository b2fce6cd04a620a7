//! Experiment harness for the `displab` command-line tool: configuration,
//! suite runners and result persistence.

pub mod config;
pub mod error;
pub mod record;
pub mod suites;

use std::time::Instant;

use serde_json::json;

use config::{ExperimentConfig, SuiteKind};
use error::{CliError, CliResult};
use record::{Summary, Table};

/// Hash of the suite's resolved configuration together with the seed.
pub fn suite_hash(kind: SuiteKind, cfg: &ExperimentConfig, seed: u64) -> CliResult<String> {
    let section = match kind {
        SuiteKind::Decay => serde_json::to_value(&cfg.decay)?,
        SuiteKind::Strichartz => serde_json::to_value(&cfg.strichartz)?,
        SuiteKind::Wellposed => serde_json::to_value(&cfg.wellposed)?,
        SuiteKind::Dunkl => serde_json::to_value(&cfg.dunkl)?,
        SuiteKind::Admissible => serde_json::to_value(&cfg.admissible)?,
    };
    record::config_hash(&json!({ "suite": kind.name(), "seed": seed, "config": section }))
}

/// Runs one suite on a pool of `jobs` threads.
pub fn run_suite(kind: SuiteKind, cfg: &ExperimentConfig, seed: u64, jobs: usize) -> CliResult<(Summary, Vec<Table>)> {
    if let Some(declared) = cfg.kind {
        if declared != kind {
            return Err(CliError::Config(format!(
                "configuration is for '{}' but the '{}' suite was requested",
                declared.name(),
                kind.name()
            )));
        }
    }
    if jobs == 0 {
        return Err(CliError::Config("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))?;
    let config_hash = suite_hash(kind, cfg, seed)?;
    let start = Instant::now();
    let output = pool.install(|| suites::dispatch(kind, cfg, seed))?;
    let summary = Summary {
        suite: kind.name().into(),
        config_hash,
        cases: output.cases,
        wall_clock_s: start.elapsed().as_secs_f64(),
    };
    Ok((summary, output.tables))
}
