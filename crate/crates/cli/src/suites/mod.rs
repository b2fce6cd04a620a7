//! One module per experiment suite.

pub mod admissible;
pub mod decay;
pub mod dunkl;
pub mod strichartz;
pub mod wellposed;

use crate::config::{ExperimentConfig, SuiteKind};
use crate::error::CliResult;
use crate::record::SuiteOutput;

pub fn dispatch(kind: SuiteKind, cfg: &ExperimentConfig, seed: u64) -> CliResult<SuiteOutput> {
    match kind {
        SuiteKind::Decay => decay::run(&cfg.decay, seed),
        SuiteKind::Strichartz => strichartz::run(&cfg.strichartz, seed),
        SuiteKind::Wellposed => {
            wellposed::validate(&cfg.wellposed)?;
            wellposed::run(&cfg.wellposed, seed)
        }
        SuiteKind::Dunkl => dunkl::run(&cfg.dunkl, seed),
        SuiteKind::Admissible => admissible::run(&cfg.admissible, seed),
    }
}
