//! Frequency-localized kernels, decay fits and Hessian rank probes.

pub mod fit;
pub mod hessian;
pub mod synth;
pub mod verify;

pub use fit::{fit_decay, log_spaced, DecayFit};
pub use hessian::{probe_hessian_rank, probe_hessian_rank_at, ProbeMode, RankProbe};
pub use synth::{synthesize_kernel, synthesize_partial_kernel, KernelSynth};
pub use verify::{auto_grid, verify_decay_rates, verify_partial_decay, DecayPolicy, DecayVerification, NormPair};
