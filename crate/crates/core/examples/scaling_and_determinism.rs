//! Scaling the metric scales every number exactly, and thread count does not
//! change a single byte of the report.

use lyapnum::report::{check_theorems, report_json};
use lyapnum::zoo::make_tent;
use lyapnum::{estimate_all, EstimatorConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = 3.7;
    let cfg = EstimatorConfig::smoke();
    let spec = make_tent();
    let base = estimate_all(&spec, &cfg)?;
    // radii are measured in the scaled metric too
    let scaled_cfg = EstimatorConfig {
        delta0: cfg.delta0 * c,
        ..cfg.clone()
    };
    let scaled = estimate_all(&spec.scaled(c), &scaled_cfg)?;
    for (a, b) in base.numbers().iter().zip(scaled.numbers()) {
        println!(
            "{a:.12} * {c} = {:.12}  (scaled run {b:.12}, equal: {})",
            c * a,
            b == c * a
        );
    }

    let json = |threads| -> Result<String, Box<dyn std::error::Error>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()?;
        let r = pool.install(|| estimate_all(&spec, &cfg))?;
        Ok(report_json(
            &r,
            &check_theorems(&r, spec.flags(), 0.05 * r.diameter),
        ))
    };
    println!("1 thread == 3 threads: {}", json(1)? == json(3)?);
    Ok(())
}
