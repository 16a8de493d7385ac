//! The registry with its declared flags, each entry checked against the
//! metric axioms on sampled points.

use lyapnum::zoo::{audit, list, registry};

fn main() {
    for entry in list(None) {
        println!(
            "{:<24} diam={:<18} sensitive={} transitive={} hard points={}",
            entry.name,
            entry.known_diameter.map_or("?".into(), |d| d.to_string()),
            entry.flags.sensitive,
            entry.flags.transitive,
            entry.hard_points
        );
    }
    for spec in registry(100) {
        let problems = audit(&spec, 1000, 1);
        println!(
            "audit {:<24} {}",
            spec.name,
            if problems.is_empty() {
                "ok".into()
            } else {
                problems.join("; ")
            }
        );
    }
}
