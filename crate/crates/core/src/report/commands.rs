//! Subcommands behind the `lyapnum` binary. Each returns the process exit
//! code: 0 success, 1 an applicable theorem check failed, 2 invalid
//! configuration, 3 estimation failure.

use std::fs;
use std::io::Write;

use crate::error::EstimateError;
use crate::estimators::{estimate_all, EstimatorConfig, LyapunovReport, DEFAULT_SLACK_FRACTION};
use crate::oracle::{exact_l_estimates_with, OracleQuery, PairSet};
use crate::zoo::{self, resolve, SystemSpec};

use super::{check_theorems, curves_csv, report_json, RunManifest, TheoremCheckResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

/// Command-line overrides applied on top of a preset.
#[derive(Debug, Clone, Default)]
pub struct ConfigOverrides {
    pub seed: Option<u64>,
    pub horizon: Option<usize>,
    pub delta0: Option<f64>,
    pub levels: Option<usize>,
    pub tail_fraction: Option<f64>,
    pub strict_paper_n: bool,
}

impl ConfigOverrides {
    pub fn apply(&self, mut cfg: EstimatorConfig) -> EstimatorConfig {
        if let Some(s) = self.seed {
            cfg.rng_seed = s;
        }
        if let Some(n) = self.horizon {
            cfg.horizon = n;
        }
        if let Some(d) = self.delta0 {
            cfg.delta0 = d;
        }
        if let Some(l) = self.levels {
            cfg.delta_levels = l;
        }
        if let Some(t) = self.tail_fraction {
            cfg.tail_fraction = t;
        }
        cfg.strict_paper_n |= self.strict_paper_n;
        cfg
    }
}

fn exit_for(e: &EstimateError) -> i32 {
    match e {
        EstimateError::Config(_) => EXIT_CONFIG,
        _ => EXIT_RUNTIME,
    }
}

/// Estimate plus theorem rows at slack `0.05·diam`.
pub fn run(
    spec: &SystemSpec,
    cfg: &EstimatorConfig,
) -> Result<(LyapunovReport, Vec<TheoremCheckResult>), EstimateError> {
    let report = estimate_all(spec, cfg)?;
    let theorems = check_theorems(
        &report,
        spec.flags(),
        DEFAULT_SLACK_FRACTION * report.diameter,
    );
    Ok((report, theorems))
}

fn summary_line(r: &LyapunovReport) -> String {
    format!(
        "{:<24} L1={:.6} L2={:.6} L3={:.6} L4={:.6} diam={:.6}",
        r.system, r.l1, r.l2, r.l3, r.l4, r.diameter
    )
}

/// Runs the manifest and writes `report.json` and `curves.csv` to its output
/// directory. With `json`, the report is also printed.
pub fn cmd_estimate(
    manifest: &RunManifest,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let spec = match manifest.resolve() {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_CONFIG;
        }
    };
    let (report, theorems) = match run(&spec, &manifest.config) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_for(&e);
        }
    };
    let doc = report_json(&report, &theorems);
    let written = manifest
        .out_dir
        .as_ref()
        .map_or(Ok(()), fs::create_dir_all)
        .and_then(|_| fs::write(manifest.report_path(), &doc))
        .and_then(|_| fs::write(manifest.curves_path(), curves_csv(&report)));
    if let Err(e) = written {
        let _ = writeln!(err, "error: writing reports: {e}");
        return EXIT_RUNTIME;
    }
    if json {
        let _ = out.write_all(doc.as_bytes());
    } else {
        let _ = writeln!(out, "{}", summary_line(&report));
        for v in report.inequalities.iter().filter(|v| !v.pass) {
            let _ = writeln!(out, "  inequality {} fails: {} vs {}", v.name, v.lhs, v.rhs);
        }
        let _ = writeln!(
            out,
            "wrote {} and {}",
            manifest.report_path().display(),
            manifest.curves_path().display()
        );
    }
    EXIT_OK
}

/// Estimates every system and prints its theorem rows. Exits 1 when an
/// applicable row fails.
pub fn cmd_verify(
    systems: &[String],
    cfg: &EstimatorConfig,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let names: Vec<String> = if systems.is_empty() {
        zoo::DEFAULT_SYSTEMS.iter().map(|s| s.to_string()).collect()
    } else {
        systems.to_vec()
    };
    let mut specs = Vec::new();
    for n in &names {
        match resolve(n, cfg.horizon) {
            Ok(s) => specs.push(s),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_CONFIG;
            }
        }
    }
    let mut failed = false;
    let mut docs = Vec::new();
    for spec in &specs {
        let (report, theorems) = match run(spec, cfg) {
            Ok(r) => r,
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", spec.name);
                return exit_for(&e);
            }
        };
        failed |= theorems.iter().any(TheoremCheckResult::failed);
        if json {
            docs.push(super::report_document(&report, &theorems));
        } else {
            let _ = writeln!(out, "{}", summary_line(&report));
            for t in &theorems {
                let _ = writeln!(
                    out,
                    "  {:<9} {:<26} lhs={:.6} rhs={:.6} slack={:.4} {}",
                    t.id.as_str(),
                    t.claim,
                    t.lhs,
                    t.rhs,
                    t.slack,
                    t.verdict
                );
            }
        }
    }
    if json {
        let _ = out.write_all(super::render_json(&serde_json::Value::Array(docs)).as_bytes());
    }
    if failed {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    }
}

/// Prints the exact `L1 L2 L3 L4` of the full shift by enumeration.
pub fn cmd_oracle(
    k: usize,
    m: usize,
    word_len: usize,
    horizon: usize,
    tail_fraction: f64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    match exact_l_estimates_with(
        &OracleQuery::new(k, m, word_len, horizon, tail_fraction),
        PairSet::All,
    ) {
        Ok(v) => {
            let _ = writeln!(out, "{v}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CONFIG
        }
    }
}

/// Lists registry entries whose name contains `filter`.
pub fn cmd_zoo_list(filter: Option<&str>, json: bool, out: &mut dyn Write) -> i32 {
    let entries = zoo::list(filter);
    if json {
        let text = serde_json::to_string_pretty(&entries).expect("listing serializes");
        let _ = writeln!(out, "{text}");
        return EXIT_OK;
    }
    for e in &entries {
        let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let diam = e.known_diameter.map_or("?".to_string(), |d| format!("{d}"));
        let _ = writeln!(
            out,
            "{:<24} diam={:<18} transitive={} minimal={} weakly_mixing={} sensitive={} {}",
            e.name,
            diam,
            e.flags.transitive,
            e.flags.minimal,
            e.flags.weakly_mixing,
            e.flags.sensitive,
            params.join(" ")
        );
    }
    EXIT_OK
}
