//! Exact values on the full shift, and the sampled estimates next to them.

use lyapnum::oracle::{closed_form, exact_l_estimates, oracle_vs_estimator, OracleQuery};
use lyapnum::EstimatorConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "enumerated (k=2, m=2, W=12, N=8): {}",
        exact_l_estimates(2, 2, 12, 8, 0.5)?
    );
    // cylinders deeper than the horizon cannot separate all the way to 1
    let q = OracleQuery::new(2, 10, 40, 8, 0.5);
    println!("closed form (k=2, m=10, W=40, N=8): {}", closed_form(&q)?);

    let cmp = oracle_vs_estimator(2, &EstimatorConfig::smoke())?;
    println!(
        "smoke estimate vs exact ({:?}, depth {}): {:?} vs {}, max gap {:.3e}",
        cmp.method,
        cmp.depth,
        cmp.estimated,
        cmp.exact,
        cmp.max_gap()
    );
    Ok(())
}
