//! Concrete systems and the name registry.
//!
//! Registry names: `three_branch`, `surface_prop51`, `tent`, `doubling`,
//! `rotation:<alpha>`, `full_shift:<k>`, `product:<a>,<b>`.
//!
//! Classification flags are literature values, trusted and not verified.

mod circle;
mod interval;
mod product;
mod shift;
mod surface;

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

pub use circle::{arc_distance, Doubling, Rotation};
pub use interval::{three_branch_map, Tent, ThreeBranch};
pub use product::Product;
pub use shift::{cylinder_depth, FullShift, SHIFT_MARGIN};
pub use surface::{ambient, height, radial_map, Surface, SURFACE_DIAMETER};

use crate::error::{ConfigError, SamplerError};
use crate::point::{fixed_point, BinaryExpansion, Point};
use crate::system::{fill_ball, stream_rng, Flags, MetricSystem, SampleRng, ScaledMetric};

/// Stored bits of a binary-expansion point unless a longer horizon asks for more.
pub const DEFAULT_BITS: usize = 4096;
/// Bits read by the metric past the current position.
pub const READOUT_MARGIN: usize = 64;

/// Systems in the default registry listing.
pub const DEFAULT_SYSTEMS: &[&str] = &[
    "three_branch",
    "surface_prop51",
    "tent",
    "doubling",
    "rotation:0.381966",
    "full_shift:2",
    "product:tent,doubling",
];

#[inline]
pub(crate) fn expect_real1(p: &Point) -> f64 {
    match p.as_real() {
        Some(&[x]) => x,
        _ => panic!("expected a one-dimensional real point, got {p:?}"),
    }
}

#[inline]
pub(crate) fn expect_binary(p: &Point) -> &BinaryExpansion {
    match p {
        Point::Binary(b) => b,
        _ => panic!("expected a binary expansion, got {p:?}"),
    }
}

/// Ball sampler for binary-expansion systems: perturb the leading 64 bits
/// of the center and draw the remaining bits at random.
pub(crate) fn binary_ball(
    sys: &dyn MetricSystem,
    rng: &mut SampleRng,
    center: &Point,
    radius: f64,
    count: usize,
    bits: usize,
    circular: bool,
) -> Result<Vec<Point>, SamplerError> {
    let c = match center {
        Point::Binary(b) => b,
        _ => return Err(SamplerError::ForeignPoint),
    };
    let cu = c.readout();
    let cv = sys.embed(center);
    let span = fixed_point(radius.min(1.0));
    let whole_circle = circular && span >= 1u64 << 63;
    fill_ball(
        rng,
        radius,
        count,
        |rng, shell| {
            let u = if whole_circle {
                rng.random::<u64>()
            } else if shell {
                let off = rng.random_range(span / 2..=span);
                let up = rng.random::<bool>();
                if circular {
                    if up {
                        cu.wrapping_add(off)
                    } else {
                        cu.wrapping_sub(off)
                    }
                } else {
                    let (first, second) = if up {
                        (cu.checked_add(off), cu.checked_sub(off))
                    } else {
                        (cu.checked_sub(off), cu.checked_add(off))
                    };
                    first.or(second).unwrap_or(cu)
                }
            } else if circular {
                cu.wrapping_sub(span)
                    .wrapping_add(rng.random_range(0..=2 * span))
            } else {
                rng.random_range(cu.saturating_sub(span)..=cu.saturating_add(span))
            };
            Point::Binary(BinaryExpansion::with_prefix(u, bits, rng))
        },
        |p| sys.embedded_distance(&sys.embed(p), &cv),
    )
}

/// A named system with its constructor parameters and hard points: the
/// distinguished points (fixed points, endpoints) always included among the
/// estimator's base centers.
#[derive(Debug, Clone)]
pub struct SystemSpec {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub system: Arc<dyn MetricSystem>,
    pub hard_points: Vec<Point>,
}

impl SystemSpec {
    /// Wraps any system, e.g. one defined outside the crate.
    pub fn custom(
        name: impl Into<String>,
        system: Arc<dyn MetricSystem>,
        hard_points: Vec<Point>,
    ) -> Self {
        Self::new(name, system, hard_points)
    }

    fn new(
        name: impl Into<String>,
        system: Arc<dyn MetricSystem>,
        hard_points: Vec<Point>,
    ) -> Self {
        SystemSpec {
            name: name.into(),
            params: Vec::new(),
            system,
            hard_points,
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn flags(&self) -> Flags {
        self.system.flags()
    }

    pub fn known_diameter(&self) -> Option<f64> {
        self.system.known_diameter()
    }

    /// The same system with its metric multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> SystemSpec {
        SystemSpec {
            name: format!("{}*{}", self.name, factor),
            params: self.params.clone(),
            system: Arc::new(ScaledMetric::new(Arc::clone(&self.system), factor)),
            hard_points: self.hard_points.clone(),
        }
    }
}

pub fn make_three_branch() -> SystemSpec {
    let hard = [0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0]
        .map(Point::real1)
        .to_vec();
    SystemSpec::new("three_branch", Arc::new(ThreeBranch), hard)
}

pub fn make_surface_prop51() -> SystemSpec {
    let hard = vec![
        Surface::point(0.0, 0.0),
        Surface::point(1.0, 0.0),
        Surface::point(0.5, 0.0),
    ];
    SystemSpec::new("surface_prop51", Arc::new(Surface), hard)
}

pub fn make_tent() -> SystemSpec {
    make_tent_with_bits(DEFAULT_BITS)
}

pub fn make_tent_with_bits(bits: usize) -> SystemSpec {
    let tent = Tent::new(bits);
    let hard = vec![
        Point::Binary(BinaryExpansion::periodic(&[0], tent.bits)),
        Point::Binary(BinaryExpansion::periodic(&[1, 0], tent.bits)),
        tent.point(0.5).expect("in range"),
        Point::Binary(BinaryExpansion::periodic(&[1], tent.bits)),
    ];
    SystemSpec::new("tent", Arc::new(tent), hard).param("bits", tent.bits)
}

pub fn make_doubling_circle() -> SystemSpec {
    make_doubling_with_bits(DEFAULT_BITS)
}

pub fn make_doubling_with_bits(bits: usize) -> SystemSpec {
    let dbl = Doubling::new(bits);
    let hard = vec![
        Point::Binary(BinaryExpansion::periodic(&[0], dbl.bits)),
        Point::Binary(BinaryExpansion::periodic(&[0, 1], dbl.bits)),
        Point::Binary(BinaryExpansion::periodic(&[1, 0], dbl.bits)),
    ];
    SystemSpec::new("doubling", Arc::new(dbl), hard).param("bits", dbl.bits)
}

pub fn make_rotation(alpha: f64) -> Result<SystemSpec, ConfigError> {
    let rot = Rotation::new(alpha)?;
    Ok(SystemSpec::new(
        format!("rotation:{alpha}"),
        Arc::new(rot),
        vec![Point::real1(0.0)],
    )
    .param("alpha", alpha))
}

/// Full shift on `k` symbols with words long enough for `horizon` steps.
pub fn make_full_shift(k: usize, horizon: usize) -> Result<SystemSpec, ConfigError> {
    let sys = FullShift::new(k, horizon)?;
    let hard = vec![
        sys.periodic_point(&[0])?,
        sys.periodic_point(&[(k - 1) as u8])?,
    ];
    Ok(
        SystemSpec::new(format!("full_shift:{k}"), Arc::new(sys), hard)
            .param("k", k)
            .param("word_len", sys.word_len()),
    )
}

/// Product with the max metric; hard points are all pairs of factor hard points.
pub fn make_product(a: &SystemSpec, b: &SystemSpec) -> SystemSpec {
    let hard = a
        .hard_points
        .iter()
        .flat_map(|p| {
            b.hard_points
                .iter()
                .map(move |q| Product::pair(p.clone(), q.clone()))
        })
        .collect();
    let sys = Product::new(Arc::clone(&a.system), Arc::clone(&b.system));
    SystemSpec::new(
        format!("product:{},{}", a.name, b.name),
        Arc::new(sys),
        hard,
    )
    .param("a", &a.name)
    .param("b", &b.name)
}

/// Builds a registry entry, sizing stored words and expansions for `horizon`.
pub fn resolve(name: &str, horizon: usize) -> Result<SystemSpec, ConfigError> {
    let bits = DEFAULT_BITS.max(horizon + READOUT_MARGIN);
    let unknown = || ConfigError::UnknownSystem(name.to_string());
    match name {
        "three_branch" => return Ok(make_three_branch()),
        "surface_prop51" => return Ok(make_surface_prop51()),
        "tent" => return Ok(make_tent_with_bits(bits)),
        "doubling" => return Ok(make_doubling_with_bits(bits)),
        _ => {}
    }
    let (kind, arg) = name.split_once(':').ok_or_else(unknown)?;
    match kind {
        "rotation" => {
            let alpha: f64 = arg
                .parse()
                .map_err(|_| ConfigError::param("alpha", format!("cannot parse `{arg}`")))?;
            make_rotation(alpha)
        }
        "full_shift" => {
            let k: usize = arg
                .parse()
                .map_err(|_| ConfigError::param("k", format!("cannot parse `{arg}`")))?;
            make_full_shift(k, horizon)
        }
        "product" => {
            let (a, b) = arg.split_once(',').ok_or_else(unknown)?;
            if a.starts_with("product:") || b.starts_with("product:") {
                return Err(ConfigError::param(
                    "product",
                    "nested products are not supported",
                ));
            }
            Ok(make_product(&resolve(a, horizon)?, &resolve(b, horizon)?))
        }
        _ => Err(unknown()),
    }
}

/// Every system in [`DEFAULT_SYSTEMS`].
pub fn registry(horizon: usize) -> Vec<SystemSpec> {
    DEFAULT_SYSTEMS
        .iter()
        .map(|n| resolve(n, horizon).expect("default registry entries resolve"))
        .collect()
}

/// One row of the registry listing.
#[derive(Debug, Clone, Serialize)]
pub struct ZooEntry {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub flags: Flags,
    pub known_diameter: Option<f64>,
    pub hard_points: usize,
}

/// Default registry entries whose name contains `filter`.
pub fn list(filter: Option<&str>) -> Vec<ZooEntry> {
    registry(0)
        .into_iter()
        .filter(|s| filter.is_none_or(|f| s.name.contains(f)))
        .map(|s| ZooEntry {
            flags: s.flags(),
            known_diameter: s.known_diameter(),
            hard_points: s.hard_points.len(),
            name: s.name,
            params: s.params,
        })
        .collect()
}

/// Checks the metric-space contract on sampled points: symmetry, identity,
/// triangle inequality (tolerance 1e-9), ball containment, the declared
/// diameter, and that hard points belong to the system. Returns the
/// violations found.
pub fn audit(spec: &SystemSpec, samples: usize, seed: u64) -> Vec<String> {
    const TOL: f64 = 1e-9;
    let sys = spec.system.as_ref();
    let mut rng = stream_rng(seed, 0xa0d1, 0);
    let pts = sys.sample_uniform(&mut rng, samples);
    let mut bad = Vec::new();
    for (i, x) in pts.iter().enumerate() {
        if !sys.accepts(x) {
            bad.push(format!("sample {i} rejected by its own system"));
        }
        if sys.distance(x, x) != 0.0 {
            bad.push(format!("d(x, x) != 0 at sample {i}"));
        }
        let y = &pts[(i + 1) % pts.len()];
        let z = &pts[(i * 7 + 3) % pts.len()];
        let (dxy, dyx) = (sys.distance(x, y), sys.distance(y, x));
        if dxy != dyx {
            bad.push(format!("asymmetric at sample {i}: {dxy} vs {dyx}"));
        }
        if dxy < 0.0 {
            bad.push(format!("negative distance at sample {i}"));
        }
        if sys.distance(x, z) > dxy + sys.distance(y, z) + TOL {
            bad.push(format!("triangle inequality fails at sample {i}"));
        }
        if let Some(diam) = sys.known_diameter() {
            if dxy > diam + TOL {
                bad.push(format!("distance {dxy} exceeds diameter {diam}"));
            }
        }
    }
    for (i, x) in pts.iter().take(samples.min(50)).enumerate() {
        let radius = 0.3 * 0.5f64.powi((i % 8) as i32);
        match sys.sample_ball(&mut rng, x, radius, 8) {
            Ok(ball) => {
                for p in &ball {
                    let d = sys.distance(x, p);
                    if d > radius {
                        bad.push(format!("ball point at {d} > radius {radius}"));
                    }
                }
            }
            Err(e) => bad.push(format!("ball sampler failed: {e}")),
        }
    }
    for (i, h) in spec.hard_points.iter().enumerate() {
        if !sys.accepts(h) || sys.distance(h, h) != 0.0 {
            bad.push(format!("hard point {i} does not lie in X"));
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_resolve_and_are_unique() {
        let specs = registry(500);
        let mut names: Vec<_> = specs.iter().map(|s| s.name.clone()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), DEFAULT_SYSTEMS.len());
        for (s, n) in specs.iter().zip(DEFAULT_SYSTEMS) {
            assert_eq!(&s.name, n);
        }
    }

    #[test]
    fn resolve_rejects_garbage() {
        assert!(matches!(
            resolve("nope", 10),
            Err(ConfigError::UnknownSystem(_))
        ));
        assert!(resolve("rotation:1.5", 10).is_err());
        assert!(resolve("rotation:x", 10).is_err());
        assert!(resolve("full_shift:1", 10).is_err());
        assert!(resolve("product:tent", 10).is_err());
        assert!(resolve("product:product:tent,tent,tent", 10).is_err());
    }

    #[test]
    fn horizon_sizes_representations() {
        let shift = resolve("full_shift:2", 500).unwrap();
        assert_eq!(shift.system.max_horizon(), Some(500));
        let tent = resolve("tent", 10_000).unwrap();
        assert_eq!(tent.system.max_horizon(), Some(10_000));
        assert_eq!(
            resolve("tent", 10).unwrap().system.max_horizon(),
            Some(DEFAULT_BITS - 64)
        );
    }

    #[test]
    fn listing_filters() {
        assert_eq!(list(None).len(), DEFAULT_SYSTEMS.len());
        assert!(list(Some("zzz")).is_empty());
        let shifts = list(Some("shift"));
        assert_eq!(shifts.len(), 1);
        assert_eq!(shifts[0].known_diameter, Some(1.0));
    }
}
