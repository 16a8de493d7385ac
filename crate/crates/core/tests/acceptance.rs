//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria run one after another so the reported runtimes are not inflated
//! by other work. Criteria listed in `KNOWN_RED` are reported honestly but do
//! not fail the run; the reason is printed with them.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lyapnum::oracle::{exact_l_estimates, Dyadic};
use lyapnum::report::commands::run;
use lyapnum::report::{report_json, Outcome, RunManifest, TheoremCheckResult};
use lyapnum::zoo::{ambient, radial_map, registry, resolve, DEFAULT_SYSTEMS, SURFACE_DIAMETER};
use lyapnum::{EstimatorConfig, LyapunovReport};

/// Criteria that cannot hold as stated, with the reason.
const KNOWN_RED: &[(u32, &str)] = &[(
    9,
    "the surface contains (1,0,0) and (-1/2,0,2), which are 2.5 apart, so no correct diameter lies in [sqrt(17)/2 - 0.05, sqrt(17)/2]",
)];

struct Desk {
    report: LyapunovReport,
    theorems: Vec<TheoremCheckResult>,
    elapsed: Duration,
}

#[derive(Default)]
struct Cache(BTreeMap<String, Desk>);

impl Cache {
    fn desk(&mut self, name: &str) -> &Desk {
        self.0.entry(name.to_string()).or_insert_with(|| {
            let cfg = EstimatorConfig::desk();
            let spec = resolve(name, cfg.horizon).expect("registry name");
            let t = Instant::now();
            let (report, theorems) = run(&spec, &cfg).expect("desk run");
            Desk {
                report,
                theorems,
                elapsed: t.elapsed(),
            }
        })
    }
}

type Criterion = fn(&mut Cache) -> Line;

struct Line {
    pass: bool,
    detail: String,
}

fn line(pass: bool, detail: impl Into<String>) -> Line {
    Line {
        pass,
        detail: detail.into(),
    }
}

fn within(v: f64, lo: f64, hi: f64) -> bool {
    (lo..=hi).contains(&v)
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn criterion_1(c: &mut Cache) -> Line {
    let d = c.desk("surface_prop51");
    let r = &d.report;
    let chain_and_prop = d
        .theorems
        .iter()
        .filter(|t| t.applicable)
        .all(|t| t.verdict == Outcome::Pass);
    let pass = within(r.l1, 1.90, 2.10)
        && within(r.l3, 0.90, 1.05)
        && (r.l1 - 2.0 * r.l3).abs() <= 0.15
        && chain_and_prop
        && secs(d.elapsed) <= 60.0;
    line(
        pass,
        format!(
            "surface: L1={:.6} L3={:.6} |L1-2L3|={:.2e} applicable rows pass={chain_and_prop} runtime={:.1}s (<=60)",
            r.l1,
            r.l3,
            (r.l1 - 2.0 * r.l3).abs(),
            secs(d.elapsed)
        ),
    )
}

fn criterion_2(c: &mut Cache) -> Line {
    let d = c.desk("three_branch");
    let r = &d.report;
    let at = r.curves.l1.finest().minimizer_coords[0];
    let pass = within(r.l1, 0.45, 0.55) && (at - 0.5).abs() <= 1e-2 && secs(d.elapsed) <= 30.0;
    line(
        pass,
        format!(
            "three_branch: L1={:.6} minimizer={at} runtime={:.1}s (<=30)",
            r.l1,
            secs(d.elapsed)
        ),
    )
}

fn criterion_3(c: &mut Cache) -> Line {
    let (tent_l2, tent_l4, tent_t) = {
        let d = c.desk("tent");
        (d.report.l2, d.report.l4, d.elapsed)
    };
    let d = c.desk("doubling");
    let (dbl_l2, dbl_t) = (d.report.l2, d.elapsed);
    let pass = within(tent_l2, 0.95, 1.0)
        && (tent_l2 - tent_l4).abs() <= 0.05
        && within(dbl_l2, 0.47, 0.5)
        && secs(tent_t) <= 30.0
        && secs(dbl_t) <= 30.0;
    line(
        pass,
        format!(
            "tent: L2={tent_l2:.6} |L2-L4|={:.2e} runtime={:.1}s; doubling: L2={dbl_l2:.6} runtime={:.1}s (<=30 each)",
            (tent_l2 - tent_l4).abs(),
            secs(tent_t),
            secs(dbl_t)
        ),
    )
}

fn criterion_4(c: &mut Cache) -> Line {
    let exact = exact_l_estimates(2, 2, 12, 8, 0.5).expect("small oracle query");
    let exact_ones = exact.as_array() == [Dyadic::ONE; 4];
    let d = c.desk("full_shift:2");
    let gap = d
        .report
        .numbers()
        .iter()
        .map(|v| (v - 1.0).abs())
        .fold(0.0, f64::max);
    let pass = exact_ones && gap <= 0.02 && secs(d.elapsed) <= 20.0;
    line(
        pass,
        format!(
            "oracle(2,2,12,8)={exact}; full_shift:2 max |Li-1|={gap:.2e} runtime={:.1}s (<=20)",
            secs(d.elapsed)
        ),
    )
}

fn criterion_5(c: &mut Cache) -> Line {
    let bound = 2.0 * EstimatorConfig::desk().finest_delta();
    let d = c.desk("rotation:0.381966");
    let worst = d.report.numbers().into_iter().fold(0.0, f64::max);
    let pass = worst <= bound && worst <= 0.0032 && secs(d.elapsed) <= 10.0;
    line(
        pass,
        format!(
            "rotation: max Li={worst:.6} bound={bound} runtime={:.1}s (<=10)",
            secs(d.elapsed)
        ),
    )
}

fn criterion_6(c: &mut Cache) -> Line {
    let smoke = EstimatorConfig::smoke();
    let mut bad = Vec::new();
    for spec in registry(smoke.horizon) {
        let (r, _) = run(&spec, &smoke).expect("smoke run");
        let [l1, l2, l3, l4] = r.numbers();
        if !(l2 >= l4 && l2 >= l1 && l1 >= l3) {
            bad.push(format!("{} ordering {:?}", spec.name, r.numbers()));
        }
    }
    for name in DEFAULT_SYSTEMS {
        let r = &c.desk(name).report;
        if r.l2 > 2.0 * r.l3 + 0.05 * r.diameter {
            bad.push(format!("{name} L2={} 2L3={}", r.l2, 2.0 * r.l3));
        }
    }
    line(
        bad.is_empty(),
        format!(
            "{} systems: exact orderings at smoke, L2<=2L3+0.05diam at desk; violations {bad:?}",
            DEFAULT_SYSTEMS.len()
        ),
    )
}

fn criterion_7(_: &mut Cache) -> Line {
    let c = 3.7;
    let cfg = EstimatorConfig::smoke();
    let scaled_cfg = EstimatorConfig {
        delta0: cfg.delta0 * c,
        ..cfg.clone()
    };
    let mut bad = Vec::new();
    for spec in registry(cfg.horizon) {
        let (a, ta) = run(&spec, &cfg).expect("smoke run");
        let (b, tb) = run(&spec.scaled(c), &scaled_cfg).expect("scaled run");
        let exact = a.numbers().iter().zip(b.numbers()).all(|(x, y)| y == c * x)
            && b.diameter == c * a.diameter;
        let same_inequalities = a
            .inequalities
            .iter()
            .zip(&b.inequalities)
            .all(|(x, y)| x.pass == y.pass);
        let same_theorems = ta.iter().zip(&tb).all(|(x, y)| x.verdict == y.verdict);
        if !(exact && same_inequalities && same_theorems) {
            bad.push(spec.name.clone());
        }
    }
    line(bad.is_empty(), format!("c=3.7 on every zoo system: bitwise c*Li and c*diam, verdicts unchanged; mismatches {bad:?}"))
}

fn criterion_8(c: &mut Cache) -> Line {
    let name = "three_branch";
    let manifest = RunManifest::new(name, EstimatorConfig::desk()).expect("registry name");
    let spec = manifest.resolve().expect("resolves");
    let render = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| {
            let (r, t) = run(&spec, &manifest.config).expect("desk run");
            report_json(&r, &t)
        })
    };
    let one = render(1);
    let four = render(4);
    let d = c.desk(name);
    let default_pool = report_json(&d.report, &d.theorems);
    let pass = one == four && one == default_pool;
    line(pass, format!("{name} desk report.json: 1 thread, 4 threads and the default pool identical={pass} ({} bytes)", one.len()))
}

fn criterion_9(c: &mut Cache) -> Line {
    let worst = (0..10_000)
        .map(|i| {
            let r = i as f64 / 9_999.0;
            ((1.0 - radial_map(r)) - (1.0 - r) * (1.0 - r)).abs()
        })
        .fold(0.0, f64::max);
    // dense search over radii at opposite angles
    let n = 2000;
    let mut grid = 0.0f64;
    for i in 0..=n {
        let a = ambient(i as f64 / n as f64, 0.0);
        for j in 0..=n {
            let b = ambient(j as f64 / n as f64, std::f64::consts::PI);
            grid = grid.max(
                ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt(),
            );
        }
    }
    let diam = c.desk("surface_prop51").report.diameter;
    let target = 17f64.sqrt() / 2.0;
    let literal = within(diam, target - 0.05, target + 1e-9);
    let oracle_agrees = (diam - grid).abs() <= 1e-6 && (SURFACE_DIAMETER - grid).abs() <= 1e-6;
    line(
        worst <= 1e-15 && literal,
        format!(
            "max |1-g(r)-(1-r)^2|={worst:.1e} (<=1e-15: {}); diameter={diam:.9} grid oracle={grid:.9} agree={oracle_agrees}; literal interval [{:.6}, {:.6}] holds={literal}",
            worst <= 1e-15,
            target - 0.05,
            target + 1e-9
        ),
    )
}

fn main() -> ExitCode {
    let mut cache = Cache::default();
    let criteria: [(u32, Criterion); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (id, check) in criteria {
        let l = check(&mut cache);
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id);
        println!(
            "{} criterion {id}: {}",
            if l.pass { "PASS" } else { "FAIL" },
            l.detail
        );
        match (l.pass, known) {
            (false, Some((_, why))) => println!("     known red: {why}"),
            (false, None) => unexpected.push(id),
            (true, Some(_)) => println!("     listed as known red but passed"),
            (true, None) => {}
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: no unexpected failures");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures {unexpected:?}");
        ExitCode::FAILURE
    }
}
