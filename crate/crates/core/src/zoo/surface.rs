//! A disk-like surface in R³ on which `𝕃_r = 2𝕃̄_r`.
//!
//! Points are stored in chart coordinates `(r, φ)`, `r ∈ [0, 1]`,
//! `φ ∈ [0, 2π)`, and embedded as `(r cos φ, r sin φ, h(r))` with
//! `h(r) = 8r(1 − r)`. The map is `(r, φ) ↦ (g(r), 2φ)` with
//! `g(r) = 2r − r²`, so `1 − g(r) = (1 − r)²` and every `r > 0` is driven to
//! the unit circle while the origin stays fixed.

use std::f64::consts::TAU;

use rand::Rng;

use crate::error::SamplerError;
use crate::point::Point;
use crate::system::{fill_ball, Flags, MetricSystem, SampleRng, Trivalent};

/// Largest distance between two points of the surface: attained by `r = 1`
/// and `r ≈ 0.548869` at opposite angles.
pub const SURFACE_DIAMETER: f64 = 2.514_545_379_107_35;

/// Height profile.
pub fn height(r: f64) -> f64 {
    8.0 * r * (1.0 - r)
}

/// Radial map.
pub fn radial_map(r: f64) -> f64 {
    (2.0 * r - r * r).clamp(0.0, 1.0)
}

/// Ambient image of chart coordinates.
pub fn ambient(r: f64, phi: f64) -> [f64; 3] {
    let (s, c) = phi.sin_cos();
    [r * c, r * s, height(r)]
}

fn chart(p: &Point) -> (f64, f64) {
    match p.as_real() {
        Some(&[r, phi]) => (r, phi),
        _ => panic!("surface point must be (r, phi), got {p:?}"),
    }
}

fn euclid3(a: &[f64], b: &[f64]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Surface;

impl Surface {
    pub fn point(r: f64, phi: f64) -> Point {
        let phi = phi.rem_euclid(TAU);
        Point::real(&[r.clamp(0.0, 1.0), if phi >= TAU { 0.0 } else { phi }])
            .expect("finite chart coordinates")
    }
}

impl MetricSystem for Surface {
    fn step(&self, x: &Point) -> Point {
        let (r, phi) = chart(x);
        let t = 2.0 * phi;
        let phi = if t >= TAU { t - TAU } else { t };
        Point::real(&[radial_map(r), phi]).expect("finite")
    }

    fn embed(&self, x: &Point) -> Point {
        let (r, phi) = chart(x);
        Point::Real(ambient(r, phi).into_iter().collect())
    }

    fn embedded_distance(&self, a: &Point, b: &Point) -> f64 {
        match (a.as_real(), b.as_real()) {
            (Some(a), Some(b)) if a.len() == 3 && b.len() == 3 => euclid3(a, b),
            _ => panic!("surface distances compare ambient points"),
        }
    }

    fn flat_embed(&self, x: &Point, out: &mut Vec<f64>) {
        let (r, phi) = chart(x);
        out.extend_from_slice(&ambient(r, phi));
    }

    fn flat_dim(&self) -> Option<usize> {
        Some(3)
    }

    fn flat_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        euclid3(a, b)
    }

    fn sample_uniform(&self, rng: &mut SampleRng, count: usize) -> Vec<Point> {
        (0..count)
            .map(|_| {
                let r = rng.random_range(0.0..=1.0);
                let phi = rng.random_range(0.0..TAU);
                Point::real(&[r, phi]).expect("finite")
            })
            .collect()
    }

    fn sample_ball(
        &self,
        rng: &mut SampleRng,
        center: &Point,
        radius: f64,
        count: usize,
    ) -> Result<Vec<Point>, SamplerError> {
        let (r, phi) = match center.as_real() {
            Some(&[r, phi]) => (r, phi),
            _ => return Err(SamplerError::ForeignPoint),
        };
        let c = ambient(r, phi);
        // Ambient distance dominates |Δr| and r·sin|Δφ|, so this chart box
        // contains the ball.
        let r_lo = (r - radius).max(0.0);
        let r_hi = (r + radius).min(1.0);
        let half_width = if radius < r {
            (radius / r).asin()
        } else {
            std::f64::consts::PI
        };
        fill_ball(
            rng,
            radius,
            count,
            |rng, _| {
                let rr = rng.random_range(r_lo..=r_hi);
                let dphi = rng.random_range(-half_width..=half_width);
                Surface::point(rr, phi + dphi)
            },
            |p| {
                let (rr, pp) = chart(p);
                euclid3(&ambient(rr, pp), &c)
            },
        )
    }

    fn known_diameter(&self) -> Option<f64> {
        Some(SURFACE_DIAMETER)
    }

    fn flags(&self) -> Flags {
        Flags {
            transitive: Trivalent::False,
            minimal: Trivalent::False,
            weakly_mixing: Trivalent::False,
            sensitive: Trivalent::True,
        }
    }

    fn accepts(&self, p: &Point) -> bool {
        matches!(p.as_real(), Some(&[r, phi]) if (0.0..=1.0).contains(&r) && (0.0..TAU).contains(&phi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ambient_image_of_top_circle() {
        let a = ambient(0.5, 0.0);
        assert_eq!(a, [0.5, 0.0, 2.0]);
    }

    #[test]
    fn one_step_by_hand() {
        let p = Surface.step(&Surface::point(0.5, std::f64::consts::FRAC_PI_3));
        let (r, phi) = chart(&p);
        assert!((r - 0.75).abs() < 1e-15);
        assert!((phi - 2.0 * std::f64::consts::FRAC_PI_3).abs() < 1e-15);
        assert!((height(r) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn angle_stays_reduced() {
        let mut p = Surface::point(0.3, 6.2);
        for _ in 0..200 {
            p = Surface.step(&p);
            assert!(Surface.accepts(&p), "{p:?}");
        }
    }

    #[test]
    fn unit_circle_is_at_distance_one_from_origin() {
        let o = Surface::point(0.0, 0.0);
        for k in 0..64 {
            let q = Surface::point(1.0, k as f64 * 0.1);
            assert!((Surface.distance(&o, &q) - 1.0).abs() < 1e-15);
        }
    }
}
