//! Theorem rows for a few systems, as `lyapnum verify` prints them.

use lyapnum::estimators::DEFAULT_SLACK_FRACTION;
use lyapnum::report::check_theorems;
use lyapnum::zoo::resolve;
use lyapnum::{estimate_all, EstimatorConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = EstimatorConfig::smoke();
    for name in ["tent", "surface_prop51", "rotation:0.381966"] {
        let spec = resolve(name, cfg.horizon)?;
        let report = estimate_all(&spec, &cfg)?;
        let slack = DEFAULT_SLACK_FRACTION * report.diameter;
        println!("{name}: L = {:?}", report.numbers());
        for row in check_theorems(&report, spec.flags(), slack) {
            println!("  {:<9} {:<26} {}", row.id, row.claim, row.verdict);
        }
    }
    Ok(())
}
