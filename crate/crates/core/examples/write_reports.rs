//! Writes report.json and curves.csv the way `lyapnum estimate` does.
//!
//! cargo run --release --example write_reports -- out_dir

use lyapnum::report::commands::cmd_estimate;
use lyapnum::report::RunManifest;
use lyapnum::EstimatorConfig;

fn main() {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "lyapnum-out".into());
    let manifest = RunManifest::new("doubling", EstimatorConfig::smoke())
        .expect("registry name")
        .with_out_dir(&dir);
    println!(
        "{}",
        serde_json::to_string_pretty(&manifest).expect("manifest serializes")
    );
    let code = cmd_estimate(
        &manifest,
        false,
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    std::process::exit(code);
}
