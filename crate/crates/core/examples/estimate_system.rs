//! Estimate the four numbers of one registry system and print the curves.
//!
//! cargo run --release --example estimate_system -- three_branch smoke

use lyapnum::estimators::Number;
use lyapnum::zoo::resolve;
use lyapnum::{estimate_all, EstimatorConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "three_branch".into());
    let cfg = EstimatorConfig::preset(&args.next().unwrap_or_else(|| "smoke".into()))?;
    let spec = resolve(&name, cfg.horizon)?;
    let report = estimate_all(&spec, &cfg)?;

    println!(
        "{} (diam {:.6}, {:?})",
        report.system, report.diameter, report.diameter_source
    );
    for n in Number::ALL {
        let curve = report.curves.get(n);
        let trail: Vec<String> = curve
            .levels
            .iter()
            .map(|p| format!("{:.4}", p.estimate))
            .collect();
        println!(
            "{} = {:.6}   by radius: {}",
            n.id(),
            report.get(n),
            trail.join(" ")
        );
    }
    let finest = report.curves.l1.finest();
    println!(
        "L1 attained at base center #{} {:?}",
        finest.minimizer, finest.minimizer_coords
    );
    Ok(())
}
