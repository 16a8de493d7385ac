//! The [`MetricSystem`] abstraction: a compact metric space with a
//! continuous self-map, samplers, and declared classification flags.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::error::SamplerError;
use crate::metric::{Orbit, Separation};
use crate::point::Point;

/// Generator handed to every sampler.
pub type SampleRng = rand_chacha::ChaCha8Rng;

/// Independent stream for `(seed, a, b)`; used to give every base center and
/// delta level its own reproducible randomness.
pub fn stream_rng(seed: u64, a: u64, b: u64) -> SampleRng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&a.to_le_bytes());
    bytes[16..24].copy_from_slice(&b.to_le_bytes());
    bytes[24..].copy_from_slice(b"lyapnum\0");
    SampleRng::from_seed(bytes)
}

/// Literature-sourced classification; trusted, not verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trivalent {
    True,
    False,
    Unknown,
}

impl Trivalent {
    pub fn is_true(self) -> bool {
        self == Trivalent::True
    }
}

impl fmt::Display for Trivalent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trivalent::True => "true",
            Trivalent::False => "false",
            Trivalent::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub transitive: Trivalent,
    pub minimal: Trivalent,
    pub weakly_mixing: Trivalent,
    pub sensitive: Trivalent,
}

impl Flags {
    pub const UNKNOWN: Flags = Flags {
        transitive: Trivalent::Unknown,
        minimal: Trivalent::Unknown,
        weakly_mixing: Trivalent::Unknown,
        sensitive: Trivalent::Unknown,
    };

    /// Topologically mixing, sensitive, not minimal.
    pub(crate) const MIXING: Flags = Flags {
        transitive: Trivalent::True,
        minimal: Trivalent::False,
        weakly_mixing: Trivalent::True,
        sensitive: Trivalent::True,
    };
}

/// A compact metric space `X` with a continuous map `f: X → X`.
///
/// The metric is evaluated through an embedding: `embed` maps a state to the
/// coordinates the metric reads and `embedded_distance` compares embedded
/// points. Orbit sweeps embed each orbit point once and then only call
/// `embedded_distance`.
pub trait MetricSystem: Send + Sync + fmt::Debug {
    /// One application of `f`.
    fn step(&self, x: &Point) -> Point;

    fn embed(&self, x: &Point) -> Point {
        x.clone()
    }

    fn embedded_distance(&self, a: &Point, b: &Point) -> f64;

    /// The metric `d`.
    fn distance(&self, a: &Point, b: &Point) -> f64 {
        self.embedded_distance(&self.embed(a), &self.embed(b))
    }

    /// `count` points spread over all of `X`.
    fn sample_uniform(&self, rng: &mut SampleRng, count: usize) -> Vec<Point>;

    /// `count` points of the closed ball `B(center, radius)`. The first point
    /// lies at distance in `[radius/2, radius]` whenever `X` allows it.
    fn sample_ball(
        &self,
        rng: &mut SampleRng,
        center: &Point,
        radius: f64,
        count: usize,
    ) -> Result<Vec<Point>, SamplerError>;

    fn known_diameter(&self) -> Option<f64> {
        None
    }

    fn flags(&self) -> Flags {
        Flags::UNKNOWN
    }

    /// Longest horizon the stored point representation can follow exactly.
    fn max_horizon(&self) -> Option<usize> {
        None
    }

    /// Whether `p` uses this system's representation.
    fn accepts(&self, p: &Point) -> bool;

    /// Length of the embedded coordinates when `embed` always yields a real
    /// vector of that length. Such systems get flat orbit storage.
    fn flat_dim(&self) -> Option<usize> {
        None
    }

    /// `embedded_distance` on flat coordinates; systems declaring a
    /// `flat_dim` override it with the same arithmetic.
    fn flat_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        self.embedded_distance(&Point::Real(a.into()), &Point::Real(b.into()))
    }

    /// Appends the flat coordinates of `embed(x)` to `out`.
    fn flat_embed(&self, x: &Point, out: &mut Vec<f64>) {
        out.extend_from_slice(
            self.embed(x)
                .as_real()
                .expect("flat systems embed into R^dim"),
        );
    }

    /// `[e(x), e(f x), …, e(f^n_max x)]` with `e` = [`MetricSystem::embed`].
    fn embedded_orbit(&self, x: &Point, n_max: usize) -> Orbit {
        let mut p = x.clone();
        match self.flat_dim() {
            Some(dim) => {
                let mut coords = Vec::with_capacity((n_max + 1) * dim);
                self.flat_embed(&p, &mut coords);
                for _ in 0..n_max {
                    p = self.step(&p);
                    self.flat_embed(&p, &mut coords);
                }
                debug_assert_eq!(coords.len(), (n_max + 1) * dim);
                Orbit::Flat { dim, coords }
            }
            None => {
                let mut out = Vec::with_capacity(n_max + 1);
                out.push(self.embed(&p));
                for _ in 0..n_max {
                    p = self.step(&p);
                    out.push(self.embed(&p));
                }
                Orbit::Points(out)
            }
        }
    }

    /// Window maxima of the metric along two embedded orbits of equal length.
    fn orbit_separation(&self, a: &Orbit, b: &Orbit, tail_from: usize) -> Separation {
        match (a, b) {
            (Orbit::Flat { dim, coords: ca }, Orbit::Flat { coords: cb, .. }) => {
                let dim = *dim;
                Separation::from_fn(ca.len().min(cb.len()) / dim, tail_from, |n| {
                    let r = n * dim..(n + 1) * dim;
                    self.flat_distance(&ca[r.clone()], &cb[r])
                })
            }
            (Orbit::Points(pa), Orbit::Points(pb)) => {
                Separation::from_fn(pa.len().min(pb.len()), tail_from, |n| {
                    self.embedded_distance(&pa[n], &pb[n])
                })
            }
            _ => Separation::from_fn(a.len().min(b.len()), tail_from, |n| {
                self.embedded_distance(&a.get(n), &b.get(n))
            }),
        }
    }
}

/// Rejection loop shared by the ball samplers: `propose(rng, shell)` draws a
/// candidate, which is kept iff its distance to the center is at most
/// `radius` (and at least `radius/2` for the first, shell, point). If no
/// shell point turns up the first slot falls back to an ordinary ball point.
pub(crate) fn fill_ball(
    rng: &mut SampleRng,
    radius: f64,
    count: usize,
    mut propose: impl FnMut(&mut SampleRng, bool) -> Point,
    dist: impl Fn(&Point) -> f64,
) -> Result<Vec<Point>, SamplerError> {
    const SHELL_TRIES: usize = 64;
    const TRIES_PER_POINT: usize = 1000;
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    for _ in 0..SHELL_TRIES {
        let p = propose(rng, true);
        let d = dist(&p);
        if d <= radius && d >= 0.5 * radius {
            out.push(p);
            break;
        }
    }
    let budget = TRIES_PER_POINT * count;
    let mut attempts = 0;
    while out.len() < count {
        if attempts == budget {
            return Err(SamplerError::Exhausted { attempts, radius });
        }
        attempts += 1;
        let p = propose(rng, false);
        if dist(&p) <= radius {
            out.push(p);
        }
    }
    Ok(out)
}

/// `sys` with its metric multiplied by `factor`. Ball radii are converted
/// back to the inner metric before sampling.
#[derive(Debug, Clone)]
pub struct ScaledMetric {
    inner: Arc<dyn MetricSystem>,
    factor: f64,
}

impl ScaledMetric {
    pub fn new(inner: Arc<dyn MetricSystem>, factor: f64) -> Self {
        assert!(factor > 0.0 && factor.is_finite(), "scale must be positive");
        ScaledMetric { inner, factor }
    }

    pub fn factor(&self) -> f64 {
        self.factor
    }
}

impl MetricSystem for ScaledMetric {
    fn step(&self, x: &Point) -> Point {
        self.inner.step(x)
    }

    fn embed(&self, x: &Point) -> Point {
        self.inner.embed(x)
    }

    fn embedded_distance(&self, a: &Point, b: &Point) -> f64 {
        self.factor * self.inner.embedded_distance(a, b)
    }

    fn sample_uniform(&self, rng: &mut SampleRng, count: usize) -> Vec<Point> {
        self.inner.sample_uniform(rng, count)
    }

    fn sample_ball(
        &self,
        rng: &mut SampleRng,
        center: &Point,
        radius: f64,
        count: usize,
    ) -> Result<Vec<Point>, SamplerError> {
        self.inner
            .sample_ball(rng, center, radius / self.factor, count)
    }

    fn known_diameter(&self) -> Option<f64> {
        self.inner.known_diameter().map(|d| self.factor * d)
    }

    fn flags(&self) -> Flags {
        self.inner.flags()
    }

    fn max_horizon(&self) -> Option<usize> {
        self.inner.max_horizon()
    }

    fn flat_dim(&self) -> Option<usize> {
        self.inner.flat_dim()
    }

    fn flat_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        self.factor * self.inner.flat_distance(a, b)
    }

    fn flat_embed(&self, x: &Point, out: &mut Vec<f64>) {
        self.inner.flat_embed(x, out)
    }

    fn embedded_orbit(&self, x: &Point, n_max: usize) -> Orbit {
        self.inner.embedded_orbit(x, n_max)
    }

    /// Scaling by a positive factor commutes with every window maximum.
    fn orbit_separation(&self, a: &Orbit, b: &Orbit, tail_from: usize) -> Separation {
        let s = self.inner.orbit_separation(a, b, tail_from);
        Separation {
            full: self.factor * s.full,
            positive: self.factor * s.positive,
            tail: self.factor * s.tail,
        }
    }

    fn accepts(&self, p: &Point) -> bool {
        self.inner.accepts(p)
    }
}
