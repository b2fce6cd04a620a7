use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("symbol evaluation produced {value} at frequency {frequency:?}")]
    SymbolEvaluation { frequency: Vec<f64>, value: f64 },

    #[error("dyadic index {index} outside representable range [{min}, {max}]")]
    OutOfRange { index: i32, min: i32, max: i32 },

    #[error("unsupported scale {0}: only powers of two are allowed")]
    UnsupportedScale(f64),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("invalid exponents: {0}")]
    InvalidExponents(String),

    #[error("degenerate scaling equation: unknown `{0}` has zero coefficient")]
    DegenerateEquation(&'static str),

    #[error("grid under-resolves the cutoff annulus: {points} radial lattice points (need {required})")]
    Resolution { points: usize, required: usize },

    #[error("frozen frequency |eta| = {0} lies outside the cutoff support")]
    FrozenFrequency(f64),

    #[error("iteration diverged at step {step}: {reason}")]
    Divergence { step: usize, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-integrable profile: {0}")]
    Integrability(String),

    #[error("quadrature budget exceeded: {nodes} nodes requested (limit {limit})")]
    Cost { nodes: usize, limit: usize },
}
