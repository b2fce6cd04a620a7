//! Result records and their CSV / JSON persistence.

use std::fs::{self, File};
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub id: String,
    pub inputs: Value,
    pub measured: Value,
    pub predicted: Value,
    /// The estimate the prediction comes from.
    pub anchor: String,
    pub verdict: Verdict,
}

impl Case {
    pub fn new(
        id: impl Into<String>,
        inputs: Value,
        measured: Value,
        predicted: Value,
        anchor: &str,
        pass: bool,
    ) -> Self {
        Self {
            id: id.into(),
            inputs,
            measured,
            predicted,
            anchor: anchor.into(),
            verdict: Verdict::from_bool(pass),
        }
    }

    /// A failed case whose measurement could not be taken.
    pub fn error(id: impl Into<String>, inputs: Value, predicted: Value, anchor: &str, error: impl ToString) -> Self {
        let measured = serde_json::json!({ "error": error.to_string() });
        Self::new(id, inputs, measured, predicted, anchor, false)
    }
}

/// A plot-ready table, written as `<suite>_<name>.csv`.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn pairs(name: impl Into<String>, x: &str, y: &str, rows: impl IntoIterator<Item = (f64, f64)>) -> Self {
        Self {
            name: name.into(),
            columns: vec![x.into(), y.into()],
            rows: rows.into_iter().map(|(a, b)| vec![a, b]).collect(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOutput {
    pub cases: Vec<Case>,
    pub tables: Vec<Table>,
}

impl SuiteOutput {
    pub fn extend(&mut self, other: SuiteOutput) {
        self.cases.extend(other.cases);
        self.tables.extend(other.tables);
    }

    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.verdict == Verdict::Pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub suite: String,
    pub config_hash: String,
    pub cases: Vec<Case>,
    pub wall_clock_s: f64,
}

/// Hex SHA-256 of the canonical JSON form of `value`.
pub fn config_hash<T: Serialize>(value: &T) -> CliResult<String> {
    let bytes = serde_json::to_vec(value)?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    verdict: &'a str,
    measured: String,
    predicted: String,
    anchor: &'a str,
    inputs: String,
}

fn file_name(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Writes `<suite>.csv`, `<suite>_summary.json` and one CSV per table.
pub fn write_outputs(dir: &Path, summary: &Summary, tables: &[Table]) -> CliResult<()> {
    let io = |e| CliError::Io(dir.to_path_buf(), e);
    fs::create_dir_all(dir).map_err(io)?;
    let mut w = csv::Writer::from_path(dir.join(format!("{}.csv", summary.suite)))?;
    for c in &summary.cases {
        w.serialize(CsvRow {
            id: &c.id,
            verdict: c.verdict.label(),
            measured: serde_json::to_string(&c.measured)?,
            predicted: serde_json::to_string(&c.predicted)?,
            anchor: &c.anchor,
            inputs: serde_json::to_string(&c.inputs)?,
        })?;
    }
    w.flush().map_err(io)?;
    for t in tables {
        let path = dir.join(file_name(&format!("{}_{}.csv", summary.suite, t.name)));
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(&t.columns)?;
        for row in &t.rows {
            w.write_record(row.iter().map(|v| v.to_string()))?;
        }
        w.flush().map_err(io)?;
    }
    let path = dir.join(format!("{}_summary.json", summary.suite));
    let mut f = File::create(&path).map_err(|e| CliError::Io(path.clone(), e))?;
    f.write_all(serde_json::to_string_pretty(summary)?.as_bytes())
        .map_err(|e| CliError::Io(path, e))?;
    Ok(())
}
