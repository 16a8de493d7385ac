//! Maps of the circle `R/Z` with the arc metric (diameter 1/2).

use rand::Rng;

use super::{binary_ball, expect_binary, expect_real1, DEFAULT_BITS, READOUT_MARGIN};
use crate::error::{ConfigError, SamplerError};
use crate::point::{BinaryExpansion, Point};
use crate::system::{fill_ball, Flags, MetricSystem, SampleRng, Trivalent};

/// Arc-length distance on a circle of circumference 1.
pub fn arc_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(1.0 - d)
}

fn wrap(x: f64) -> f64 {
    let y = x - x.floor();
    if y >= 1.0 {
        0.0
    } else {
        y
    }
}

/// Rotation `x ↦ x + α mod 1`, an isometry.
#[derive(Debug, Clone, Copy)]
pub struct Rotation {
    alpha: f64,
}

impl Rotation {
    pub fn new(alpha: f64) -> Result<Self, ConfigError> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(ConfigError::param(
                "alpha",
                format!("{alpha} is not in (0, 1)"),
            ));
        }
        Ok(Rotation { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl MetricSystem for Rotation {
    fn step(&self, x: &Point) -> Point {
        let y = expect_real1(x) + self.alpha;
        Point::real1(if y >= 1.0 { y - 1.0 } else { y })
    }

    fn embedded_distance(&self, a: &Point, b: &Point) -> f64 {
        arc_distance(expect_real1(a), expect_real1(b))
    }

    fn flat_embed(&self, x: &Point, out: &mut Vec<f64>) {
        out.push(expect_real1(x));
    }

    fn flat_dim(&self) -> Option<usize> {
        Some(1)
    }

    fn flat_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        arc_distance(a[0], b[0])
    }

    fn sample_uniform(&self, rng: &mut SampleRng, count: usize) -> Vec<Point> {
        (0..count)
            .map(|_| Point::real1(rng.random_range(0.0..1.0)))
            .collect()
    }

    fn sample_ball(
        &self,
        rng: &mut SampleRng,
        center: &Point,
        radius: f64,
        count: usize,
    ) -> Result<Vec<Point>, SamplerError> {
        let c = center.as_real().ok_or(SamplerError::ForeignPoint)?[0];
        let r = radius.min(0.5);
        fill_ball(
            rng,
            radius,
            count,
            |rng, shell| {
                let off = if shell {
                    let m = rng.random_range(0.5 * r..=r);
                    if rng.random::<bool>() {
                        m
                    } else {
                        -m
                    }
                } else {
                    rng.random_range(-r..=r)
                };
                Point::real1(wrap(c + off))
            },
            |p| arc_distance(expect_real1(p), c),
        )
    }

    fn known_diameter(&self) -> Option<f64> {
        Some(0.5)
    }

    fn flags(&self) -> Flags {
        Flags {
            transitive: Trivalent::True,
            minimal: Trivalent::True,
            weakly_mixing: Trivalent::False,
            sensitive: Trivalent::False,
        }
    }

    fn accepts(&self, p: &Point) -> bool {
        matches!(p.as_real(), Some([x]) if (0.0..1.0).contains(x))
    }
}

/// Doubling map `x ↦ 2x mod 1` on exact binary expansions (a left shift).
#[derive(Debug, Clone, Copy)]
pub struct Doubling {
    pub(crate) bits: usize,
}

impl Doubling {
    pub fn new(bits: usize) -> Self {
        Doubling {
            bits: bits.max(READOUT_MARGIN + 1),
        }
    }

    pub fn point(&self, v: f64) -> Result<Point, ConfigError> {
        BinaryExpansion::from_f64(v, self.bits).map(Point::Binary)
    }
}

impl Default for Doubling {
    fn default() -> Self {
        Doubling::new(DEFAULT_BITS)
    }
}

impl MetricSystem for Doubling {
    fn step(&self, x: &Point) -> Point {
        Point::Binary(expect_binary(x).shifted(false))
    }

    fn embed(&self, x: &Point) -> Point {
        Point::real1(expect_binary(x).value())
    }

    fn embedded_distance(&self, a: &Point, b: &Point) -> f64 {
        arc_distance(expect_real1(a), expect_real1(b))
    }

    fn flat_embed(&self, x: &Point, out: &mut Vec<f64>) {
        out.push(expect_binary(x).value());
    }

    fn flat_dim(&self) -> Option<usize> {
        Some(1)
    }

    fn flat_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        arc_distance(a[0], b[0])
    }

    fn sample_uniform(&self, rng: &mut SampleRng, count: usize) -> Vec<Point> {
        (0..count)
            .map(|_| Point::Binary(BinaryExpansion::random(self.bits, rng)))
            .collect()
    }

    fn sample_ball(
        &self,
        rng: &mut SampleRng,
        center: &Point,
        radius: f64,
        count: usize,
    ) -> Result<Vec<Point>, SamplerError> {
        binary_ball(self, rng, center, radius, count, self.bits, true)
    }

    fn known_diameter(&self) -> Option<f64> {
        Some(0.5)
    }

    fn flags(&self) -> Flags {
        Flags::MIXING
    }

    fn max_horizon(&self) -> Option<usize> {
        Some(self.bits - READOUT_MARGIN)
    }

    fn accepts(&self, p: &Point) -> bool {
        matches!(p, Point::Binary(_))
    }
}
