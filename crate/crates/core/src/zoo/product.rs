use std::sync::Arc;

use crate::error::SamplerError;
use crate::metric::Orbit;
use crate::point::Point;
use crate::system::{Flags, MetricSystem, SampleRng, Trivalent};

/// Direct product `(X × Y, f × g)` with the max metric.
#[derive(Debug, Clone)]
pub struct Product {
    factors: [Arc<dyn MetricSystem>; 2],
}

impl Product {
    pub fn new(a: Arc<dyn MetricSystem>, b: Arc<dyn MetricSystem>) -> Self {
        Product { factors: [a, b] }
    }

    pub fn pair(a: Point, b: Point) -> Point {
        Point::Product(Box::new([a, b]))
    }
}

fn parts(p: &Point) -> &[Point] {
    match p {
        Point::Product(parts) => parts,
        _ => panic!("product point expected, got {p:?}"),
    }
}

impl MetricSystem for Product {
    fn step(&self, x: &Point) -> Point {
        let p = parts(x);
        Product::pair(self.factors[0].step(&p[0]), self.factors[1].step(&p[1]))
    }

    fn embed(&self, x: &Point) -> Point {
        let p = parts(x);
        Product::pair(self.factors[0].embed(&p[0]), self.factors[1].embed(&p[1]))
    }

    fn embedded_distance(&self, a: &Point, b: &Point) -> f64 {
        let (a, b) = (parts(a), parts(b));
        self.factors[0]
            .embedded_distance(&a[0], &b[0])
            .max(self.factors[1].embedded_distance(&a[1], &b[1]))
    }

    fn flat_dim(&self) -> Option<usize> {
        Some(self.factors[0].flat_dim()? + self.factors[1].flat_dim()?)
    }

    fn flat_distance(&self, a: &[f64], b: &[f64]) -> f64 {
        let da = self.factors[0].flat_dim().expect("flat product");
        self.factors[0]
            .flat_distance(&a[..da], &b[..da])
            .max(self.factors[1].flat_distance(&a[da..], &b[da..]))
    }

    /// Flat storage concatenates the factor coordinates.
    fn embedded_orbit(&self, x: &Point, n_max: usize) -> Orbit {
        let Some(dim) = self.flat_dim() else {
            let mut out = Vec::with_capacity(n_max + 1);
            let mut p = x.clone();
            out.push(self.embed(&p));
            for _ in 0..n_max {
                p = self.step(&p);
                out.push(self.embed(&p));
            }
            return Orbit::Points(out);
        };
        let p = parts(x);
        let (oa, ob) = (
            self.factors[0].embedded_orbit(&p[0], n_max),
            self.factors[1].embedded_orbit(&p[1], n_max),
        );
        let (
            Orbit::Flat {
                dim: da,
                coords: ca,
            },
            Orbit::Flat {
                dim: db,
                coords: cb,
            },
        ) = (oa, ob)
        else {
            unreachable!("flat factors produce flat orbits");
        };
        let mut coords = Vec::with_capacity(dim * (n_max + 1));
        for (u, v) in ca.chunks_exact(da).zip(cb.chunks_exact(db)) {
            coords.extend_from_slice(u);
            coords.extend_from_slice(v);
        }
        Orbit::Flat { dim, coords }
    }

    fn sample_uniform(&self, rng: &mut SampleRng, count: usize) -> Vec<Point> {
        let xs = self.factors[0].sample_uniform(rng, count);
        let ys = self.factors[1].sample_uniform(rng, count);
        xs.into_iter()
            .zip(ys)
            .map(|(x, y)| Product::pair(x, y))
            .collect()
    }

    /// Product of the factor balls; the first points of both factor balls
    /// combine into a shell point of the product ball.
    fn sample_ball(
        &self,
        rng: &mut SampleRng,
        center: &Point,
        radius: f64,
        count: usize,
    ) -> Result<Vec<Point>, SamplerError> {
        let c = match center {
            Point::Product(c) if c.len() == 2 => c,
            _ => return Err(SamplerError::ForeignPoint),
        };
        let xs = self.factors[0].sample_ball(rng, &c[0], radius, count)?;
        let ys = self.factors[1].sample_ball(rng, &c[1], radius, count)?;
        Ok(xs
            .into_iter()
            .zip(ys)
            .map(|(x, y)| Product::pair(x, y))
            .collect())
    }

    fn known_diameter(&self) -> Option<f64> {
        Some(
            self.factors[0]
                .known_diameter()?
                .max(self.factors[1].known_diameter()?),
        )
    }

    /// Weak mixing of both factors makes the product weakly mixing (hence
    /// transitive and sensitive); anything else is left unknown.
    fn flags(&self) -> Flags {
        let wm = self
            .factors
            .iter()
            .all(|f| f.flags().weakly_mixing.is_true());
        if wm {
            Flags {
                transitive: Trivalent::True,
                minimal: Trivalent::Unknown,
                weakly_mixing: Trivalent::True,
                sensitive: Trivalent::True,
            }
        } else {
            Flags::UNKNOWN
        }
    }

    fn max_horizon(&self) -> Option<usize> {
        match (self.factors[0].max_horizon(), self.factors[1].max_horizon()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn accepts(&self, p: &Point) -> bool {
        matches!(p, Point::Product(c) if c.len() == 2
            && self.factors[0].accepts(&c[0])
            && self.factors[1].accepts(&c[1]))
    }
}
