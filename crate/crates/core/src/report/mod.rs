//! Report files, theorem checks, and the command layer of the `lyapnum` binary.
//!
//! `report.json` carries the keys `schema_version, system, config, diameter,
//! L1..L4, curves, inequalities, theorems` (plus a few diagnostics), with
//! every float rounded to 12 significant digits. `curves.csv` has the header
//! `number_id,delta,estimate` and LF line endings.

pub mod commands;
mod theorems;

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use theorems::{check_theorems, Outcome, TheoremCheckResult, TheoremId};

use crate::error::ConfigError;
use crate::estimators::{EstimatorConfig, LyapunovReport, Number};
use crate::zoo::{resolve, SystemSpec};

pub const SCHEMA_VERSION: &str = "lyapnum.report/1";

/// Everything needed to reproduce one `estimate` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: String,
    pub system: String,
    #[serde(default)]
    pub params: Vec<(String, String)>,
    pub config: EstimatorConfig,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
}

impl RunManifest {
    pub fn new(system: &str, config: EstimatorConfig) -> Result<Self, ConfigError> {
        let spec = resolve(system, config.horizon)?;
        Ok(RunManifest {
            schema_version: SCHEMA_VERSION.to_string(),
            system: spec.name,
            params: spec.params,
            config,
            out_dir: None,
        })
    }

    pub fn with_out_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.out_dir = Some(dir.into());
        self
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::param("manifest", e.to_string()))
    }

    /// Checks the schema version and config, and resolves the system.
    pub fn resolve(&self) -> Result<SystemSpec, ConfigError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(ConfigError::param(
                "schema_version",
                format!(
                    "`{}` does not match `{SCHEMA_VERSION}`",
                    self.schema_version
                ),
            ));
        }
        self.config.validate()?;
        resolve(&self.system, self.config.horizon)
    }

    pub fn report_path(&self) -> PathBuf {
        self.dir().join("report.json")
    }

    pub fn curves_path(&self) -> PathBuf {
        self.dir().join("curves.csv")
    }

    fn dir(&self) -> &Path {
        self.out_dir.as_deref().unwrap_or(Path::new("."))
    }
}

/// Nearest double to `v` written with 12 significant digits.
pub fn round_sig12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().expect("formatted float parses")
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig12(n.as_f64().expect("f64 number"));
            if let Some(r) = serde_json::Number::from_f64(x) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// The `report.json` document.
pub fn report_document(report: &LyapunovReport, theorems: &[TheoremCheckResult]) -> Value {
    let mut doc = serde_json::to_value(report).expect("reports serialize");
    let map = doc.as_object_mut().expect("reports serialize to objects");
    map.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    map.insert(
        "theorems".into(),
        serde_json::to_value(theorems).expect("theorem rows serialize"),
    );
    round_floats(&mut doc);
    doc
}

/// Pretty JSON with a trailing newline; parsing and re-emitting it
/// reproduces the same bytes.
pub fn render_json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("json values serialize");
    s.push('\n');
    s
}

pub fn report_json(report: &LyapunovReport, theorems: &[TheoremCheckResult]) -> String {
    render_json(&report_document(report, theorems))
}

/// One row per (number, level), coarsest radius first.
pub fn write_curves_csv<W: Write>(report: &LyapunovReport, w: W) -> csv::Result<()> {
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    out.write_record(["number_id", "delta", "estimate"])?;
    for n in Number::ALL {
        for p in &report.curves.get(n).levels {
            out.write_record([
                n.id().to_string(),
                round_sig12(p.delta).to_string(),
                round_sig12(p.estimate).to_string(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn curves_csv(report: &LyapunovReport) -> String {
    let mut buf = Vec::new();
    write_curves_csv(report, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_sig12(2.063_508_870_035_115_5), 2.063_508_870_04);
        assert_eq!(round_sig12(0.1), 0.1);
        assert_eq!(round_sig12(0.0), 0.0);
        assert_eq!(round_sig12(1.0 / 3.0).to_string(), "0.333333333333");
    }

    #[test]
    fn manifest_checks_schema_and_system() {
        let m = RunManifest::new("tent", EstimatorConfig::smoke()).unwrap();
        assert!(m.resolve().is_ok());
        let mut bad = m.clone();
        bad.schema_version = "other/0".into();
        assert!(bad.resolve().is_err());
        assert!(RunManifest::new("nope", EstimatorConfig::smoke()).is_err());
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(RunManifest::from_json(&text).unwrap(), m);
    }
}
