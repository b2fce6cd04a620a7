//! Duhamel map and Picard iteration for power nonlinearities.

mod duhamel;
mod nonlinearity;
mod picard;
mod search;

pub use duhamel::{duhamel_map, uniform_nodes, Duhamel, EvolutionNorm, BLOWUP_FACTOR, MIN_NODES};
pub use nonlinearity::{evaluate_nonlinearity, NonlinearForm, NonlinearSpec};
pub use picard::{picard_solve, PicardConfig, PicardReport, SolverExponents};
pub use search::{
    existence_time_search, horizon_scaling_check, ExistenceSearch, HorizonScaling, Probe, MAX_PROBES, SEARCH_EXPONENTS,
};
