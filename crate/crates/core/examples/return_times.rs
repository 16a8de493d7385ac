//! Return times to a ball and the equicontinuity probe.

use lyapnum::estimators::{eq_region_probe, return_time_gaps};
use lyapnum::zoo::{make_rotation, make_tent, Rotation};
use lyapnum::{EstimatorConfig, Point};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = (5f64.sqrt() - 1.0) / 2.0;
    let rot = Rotation::new(alpha)?;
    let zero = Point::real(&[0.0])?;
    let g = return_time_gaps(&rot, &zero, &zero, 0.05, 10_000)?;
    println!(
        "golden rotation, r=0.05: {} visits, max gap {:?}, mean gap {:.2}",
        g.visits,
        g.max_gap,
        g.mean_gap.unwrap_or(f64::NAN)
    );

    let cfg = EstimatorConfig::smoke();
    for spec in [make_rotation(0.381966)?, make_tent()] {
        let p = eq_region_probe(&spec, 0.1, &cfg)?;
        println!(
            "{}: witness for eps=0.1 at delta={}: {} (radius {:.4})",
            spec.name, p.delta, p.found, p.radius_f
        );
    }
    Ok(())
}
