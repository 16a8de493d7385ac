//! Maps of the unit interval `[0, 1]` with the Euclidean metric.

use rand::Rng;

use super::{binary_ball, expect_binary, expect_real1, DEFAULT_BITS, READOUT_MARGIN};
use crate::error::SamplerError;
use crate::point::{BinaryExpansion, Point};
use crate::system::{fill_ball, Flags, MetricSystem, SampleRng};

/// `g(x) = 3((x − 1/3) − |x − 1/3| + |x − 2/3|)`: slope +3 on `[0, 1/3]`,
/// −3 on `[1/3, 2/3]`, +3 on `[2/3, 1]`. Fixed points `0`, `1/2`, `1`.
pub fn three_branch_map(x: f64) -> f64 {
    let y = if x < 1.0 / 3.0 {
        3.0 * x
    } else if x <= 2.0 / 3.0 {
        2.0 - 3.0 * x
    } else {
        3.0 * x - 2.0
    };
    y.clamp(0.0, 1.0)
}

/// Ball sampler for `[0, 1]` around `c` with floating point coordinates.
pub(crate) fn interval_ball(
    rng: &mut SampleRng,
    c: f64,
    radius: f64,
    count: usize,
) -> Result<Vec<Point>, SamplerError> {
    let lo = (c - radius).max(0.0);
    let hi = (c + radius).min(1.0);
    fill_ball(
        rng,
        radius,
        count,
        |rng, shell| {
            let right = c + 0.5 * radius <= 1.0;
            let left = c - 0.5 * radius >= 0.0;
            let x = if shell && (left || right) {
                let off = rng.random_range(0.5 * radius..=radius);
                let go_right = if left && right {
                    rng.random::<bool>()
                } else {
                    right
                };
                if go_right {
                    (c + off).min(1.0)
                } else {
                    (c - off).max(0.0)
                }
            } else {
                rng.random_range(lo..=hi)
            };
            Point::real1(x)
        },
        |p| p.as_real().map_or(f64::INFINITY, |x| (x[0] - c).abs()),
    )
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ThreeBranch;

impl MetricSystem for ThreeBranch {
    fn step(&self, x: &Point) -> Point {
        Point::real1(three_branch_map(expect_real1(x)))
    }

    fn embedded_distance(&self, a: &Point, b: &Point) -> f64 {
        (expect_real1(a) - expect_real1(b)).abs()
    }

    fn flat_embed(&self, x: &Point, out: &mut Vec<f64>) {
        out.push(expect_real1(x));
    }

    fn flat_dim(&self) -> Option<usize> {
        Some(1)
    }

    fn flat_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        (a[0] - b[0]).abs()
    }

    fn sample_uniform(&self, rng: &mut SampleRng, count: usize) -> Vec<Point> {
        (0..count)
            .map(|_| Point::real1(rng.random_range(0.0..=1.0)))
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
        interval_ball(rng, c, radius, count)
    }

    fn known_diameter(&self) -> Option<f64> {
        Some(1.0)
    }

    fn flags(&self) -> Flags {
        Flags::MIXING
    }

    fn accepts(&self, p: &Point) -> bool {
        matches!(p.as_real(), Some([x]) if (0.0..=1.0).contains(x))
    }
}

/// Tent map `T(x) = 1 − |1 − 2x|` on exact binary expansions: drop the
/// leading bit and complement the rest when that bit was `1`.
#[derive(Debug, Clone, Copy)]
pub struct Tent {
    pub(crate) bits: usize,
}

impl Tent {
    pub fn new(bits: usize) -> Self {
        Tent {
            bits: bits.max(READOUT_MARGIN + 1),
        }
    }

    /// The point whose expansion is the 64-bit dyadic rational nearest `v`.
    pub fn point(&self, v: f64) -> Result<Point, crate::ConfigError> {
        BinaryExpansion::from_f64(v, self.bits).map(Point::Binary)
    }
}

impl Default for Tent {
    fn default() -> Self {
        Tent::new(DEFAULT_BITS)
    }
}

impl MetricSystem for Tent {
    fn step(&self, x: &Point) -> Point {
        let b = expect_binary(x);
        Point::Binary(b.shifted(b.leading_bit()))
    }

    fn embed(&self, x: &Point) -> Point {
        Point::real1(expect_binary(x).value())
    }

    fn embedded_distance(&self, a: &Point, b: &Point) -> f64 {
        (expect_real1(a) - expect_real1(b)).abs()
    }

    fn flat_embed(&self, x: &Point, out: &mut Vec<f64>) {
        out.push(expect_binary(x).value());
    }

    fn flat_dim(&self) -> Option<usize> {
        Some(1)
    }

    fn flat_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        (a[0] - b[0]).abs()
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
        binary_ball(self, rng, center, radius, count, self.bits, false)
    }

    fn known_diameter(&self) -> Option<f64> {
        Some(1.0)
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
