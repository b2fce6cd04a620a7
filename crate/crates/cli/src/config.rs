//! Experiment configuration. Every table rejects unknown keys and every
//! field has a default, so an empty file reproduces the built-in runs.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use displab::Symbol64;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Decay,
    Strichartz,
    Wellposed,
    Dunkl,
    Admissible,
}

impl SuiteKind {
    pub fn name(&self) -> &'static str {
        match self {
            SuiteKind::Decay => "decay",
            SuiteKind::Strichartz => "strichartz",
            SuiteKind::Wellposed => "wellposed",
            SuiteKind::Dunkl => "dunkl",
            SuiteKind::Admissible => "admissible",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// When present, must match the subcommand.
    pub kind: Option<SuiteKind>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub decay: DecayConfig,
    #[serde(default)]
    pub strichartz: StrichartzConfig,
    #[serde(default)]
    pub wellposed: WellposedConfig,
    #[serde(default)]
    pub dunkl: DunklConfig,
    #[serde(default)]
    pub admissible: AdmissibleConfig,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }
}

/// Built-in symbols; `power` is `|zeta|^degree`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SymbolSpec {
    // Empty braces make unknown keys an error; serde ignores them on unit variants.
    Schrodinger {},
    Wave {},
    Biharmonic {},
    Power { degree: f64 },
}

impl SymbolSpec {
    pub fn build(&self, dim: usize) -> Symbol64 {
        match *self {
            SymbolSpec::Schrodinger {} => Symbol64::schrodinger(dim),
            SymbolSpec::Wave {} => Symbol64::wave(dim),
            SymbolSpec::Biharmonic {} => Symbol64::biharmonic(dim),
            SymbolSpec::Power { degree } => Symbol64::fractional_power(degree, dim),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            SymbolSpec::Schrodinger {} => "schrodinger".into(),
            SymbolSpec::Wave {} => "wave".into(),
            SymbolSpec::Biharmonic {} => "biharmonic".into(),
            SymbolSpec::Power { degree } => format!("power{degree}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PolicyConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
    pub tolerance: f64,
}

impl Default for PolicyConfig {
    fn default() -> Self {
        let p = displab::kernel::DecayPolicy::default();
        Self {
            t_min: p.t_min,
            t_max: p.t_max,
            samples: p.samples,
            tolerance: p.tolerance,
        }
    }
}

impl PolicyConfig {
    pub fn policy(&self) -> displab::kernel::DecayPolicy {
        displab::kernel::DecayPolicy {
            t_min: self.t_min,
            t_max: self.t_max,
            samples: self.samples,
            tolerance: self.tolerance,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairSpec {
    SupSup,
    SupL2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayCase {
    pub symbol: SymbolSpec,
    pub dim: usize,
    #[serde(default = "one")]
    pub split: usize,
    #[serde(default = "sup_sup")]
    pub pair: PairSpec,
    /// Frozen `eta`; selects the partial kernel in the remaining variables.
    #[serde(default)]
    pub eta: Vec<f64>,
}

fn one() -> usize {
    1
}

fn sup_sup() -> PairSpec {
    PairSpec::SupSup
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecayConfig {
    pub policy: PolicyConfig,
    /// Start of the tail window used to flag pre-asymptotic fits.
    pub tail_start: f64,
    /// Tail and full-window exponents further apart than this are flagged.
    pub sensitivity: f64,
    pub cases: Vec<DecayCase>,
}

impl Default for DecayConfig {
    fn default() -> Self {
        let case = |symbol, eta: Vec<f64>| DecayCase {
            symbol,
            dim: 2,
            split: 1,
            pair: PairSpec::SupSup,
            eta,
        };
        Self {
            policy: PolicyConfig::default(),
            tail_start: 16.0,
            sensitivity: 0.1,
            cases: vec![
                case(SymbolSpec::Schrodinger {}, vec![]),
                case(SymbolSpec::Biharmonic {}, vec![]),
                case(SymbolSpec::Wave {}, vec![]),
                case(SymbolSpec::Schrodinger {}, vec![0.5]),
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub dim: usize,
    pub split: usize,
    pub half_length: f64,
    pub points: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            dim: 2,
            split: 1,
            half_length: 64.0,
            points: 512,
        }
    }
}

/// Exponents as written by hand: `"4"`, `"12/5"`, `"inf"`. A missing `s` is
/// solved from the scaling identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionConfig {
    pub q: String,
    pub r: String,
    pub r_tilde: String,
    pub s: Option<String>,
}

impl SelectionConfig {
    fn new(q: &str, r: &str, r_tilde: &str) -> Self {
        Self {
            q: q.into(),
            r: r.into(),
            r_tilde: r_tilde.into(),
            s: None,
        }
    }

    pub fn label(&self) -> String {
        format!("q={},r={},rt={}", self.q, self.r, self.r_tilde)
    }
}

/// Parses `"a"`, `"a/b"` or a decimal.
pub fn parse_rational(text: &str) -> CliResult<Ratio<i64>> {
    let t = text.trim();
    if let Ok(r) = Ratio::from_str(t) {
        return Ok(r);
    }
    t.parse::<f64>()
        .ok()
        .and_then(Ratio::approximate_float)
        .ok_or_else(|| CliError::Config(format!("'{text}' is not a number")))
}

/// Reciprocal of an exponent; `inf` maps to zero.
pub fn parse_reciprocal(text: &str) -> CliResult<f64> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
        return Ok(0.0);
    }
    let v = parse_rational(t)?;
    if *v.numer() == 0 {
        return Err(CliError::Config(format!("exponent '{text}' must be positive")));
    }
    Ok(*v.denom() as f64 / *v.numer() as f64)
}

pub fn to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StrichartzConfig {
    pub grid: GridConfig,
    pub symbol: SymbolSpec,
    pub selections: Vec<SelectionConfig>,
    /// Family size; the stability check doubles it.
    pub packets: usize,
    pub scaling_packets: usize,
    pub plancherel_packets: usize,
    pub bands: [i32; 2],
    pub width: [f64; 2],
    pub shift: f64,
    pub horizon: f64,
    pub samples: usize,
    pub ratio_band: [f64; 2],
    pub stability: f64,
}

impl Default for StrichartzConfig {
    fn default() -> Self {
        Self {
            grid: GridConfig::default(),
            symbol: SymbolSpec::Schrodinger {},
            selections: vec![SelectionConfig::new("4", "4", "4"), SelectionConfig::new("8", "4", "4")],
            packets: 50,
            scaling_packets: 20,
            plancherel_packets: 5,
            bands: [-2, 2],
            width: [0.2, 0.5],
            shift: 16.0,
            horizon: 8.0,
            samples: 17,
            ratio_band: [0.98, 1.02],
            stability: 0.05,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormSpec {
    Preserving,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowSpec {
    Quadratic,
    Linear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypothesisSpec {
    Strict,
    Relaxed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WellposedConfig {
    pub dim: usize,
    pub half_length: f64,
    pub points: usize,
    /// Data `amplitude * exp(-|X|^2 / 2)`.
    pub amplitude: f64,
    pub degree: String,
    pub p: String,
    pub s: String,
    pub form: FormSpec,
    pub lambda: f64,
    pub window: WindowSpec,
    pub hypothesis: HypothesisSpec,
    pub nodes: usize,
    pub max_iters: usize,
    pub tolerance: f64,
    pub rho_target: f64,
    pub margin: f64,
}

impl Default for WellposedConfig {
    fn default() -> Self {
        Self {
            dim: 3,
            half_length: 8.0,
            points: 64,
            amplitude: 4.0,
            degree: "3".into(),
            p: "3".into(),
            s: "1".into(),
            form: FormSpec::Preserving,
            lambda: 1.0,
            window: WindowSpec::Quadratic,
            hypothesis: HypothesisSpec::Strict,
            nodes: 9,
            max_iters: 25,
            tolerance: 1e-10,
            rho_target: 0.5,
            margin: 0.3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DunklConfig {
    /// Exponents `a` of the phases `r^a`.
    pub phases: Vec<f64>,
    /// Homogeneous dimensions, realized as `d = 1`, `gamma = (N - 1)/2`.
    pub homogeneous_dims: Vec<f64>,
    pub policy: PolicyConfig,
    /// Diagnostic window for stationary-regime fits.
    pub late_window: [f64; 2],
    pub recurrence_points: usize,
    pub envelope_points: usize,
    pub envelope_dims: Vec<usize>,
    pub far_max: f64,
}

impl Default for DunklConfig {
    fn default() -> Self {
        Self {
            phases: vec![1.0, 2.0, 3.0, 0.5],
            homogeneous_dims: vec![2.0, 3.0, 4.0, 5.0],
            policy: PolicyConfig::default(),
            late_window: [64.0, 1024.0],
            recurrence_points: 100,
            envelope_points: 10_000,
            envelope_dims: vec![2, 3, 4],
            far_max: -3.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DunklWeights {
    pub dim: usize,
    pub degree: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdmissibleConfig {
    pub resolution: u32,
    pub dims: Vec<usize>,
    pub degrees: Vec<String>,
    pub dunkl: Vec<DunklWeights>,
    pub round_trips: usize,
}

impl Default for AdmissibleConfig {
    fn default() -> Self {
        Self {
            resolution: 48,
            dims: vec![2, 3, 4, 5],
            degrees: vec!["1".into(), "2".into(), "4".into()],
            dunkl: vec![
                DunklWeights {
                    dim: 2,
                    degree: 2.0,
                    gamma1: 0.5,
                    gamma2: 0.5,
                },
                DunklWeights {
                    dim: 3,
                    degree: 2.0,
                    gamma1: 1.0,
                    gamma2: 0.0,
                },
            ],
            round_trips: 10_000,
        }
    }
}
