//! A system defined outside the crate: the logistic map x ↦ 4x(1 − x).

use std::sync::Arc;

use rand::Rng;

use lyapnum::{
    estimate_all, EstimatorConfig, MetricSystem, Point, SampleRng, SamplerError, SystemSpec,
};

#[derive(Debug)]
struct Logistic;

fn coord(p: &Point) -> f64 {
    p.as_real().expect("real point")[0]
}

impl MetricSystem for Logistic {
    fn step(&self, x: &Point) -> Point {
        let v = coord(x);
        Point::real(&[(4.0 * v * (1.0 - v)).clamp(0.0, 1.0)]).expect("finite")
    }

    fn embedded_distance(&self, a: &Point, b: &Point) -> f64 {
        (coord(a) - coord(b)).abs()
    }

    fn sample_uniform(&self, rng: &mut SampleRng, count: usize) -> Vec<Point> {
        (0..count)
            .map(|_| Point::real(&[rng.random::<f64>()]).expect("finite"))
            .collect()
    }

    fn sample_ball(
        &self,
        rng: &mut SampleRng,
        center: &Point,
        radius: f64,
        count: usize,
    ) -> Result<Vec<Point>, SamplerError> {
        let c = coord(center);
        let (lo, hi) = ((c - radius).max(0.0), (c + radius).min(1.0));
        Ok((0..count)
            .map(|_| Point::real(&[rng.random_range(lo..=hi)]).expect("finite"))
            .collect())
    }

    fn known_diameter(&self) -> Option<f64> {
        Some(1.0)
    }

    fn accepts(&self, p: &Point) -> bool {
        p.as_real().is_some_and(|c| c.len() == 1)
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let hard = vec![Point::real(&[0.0])?, Point::real(&[0.75])?];
    let spec = SystemSpec::custom("logistic", Arc::new(Logistic), hard);
    let report = estimate_all(&spec, &EstimatorConfig::smoke())?;
    println!("logistic: L = {:?}", report.numbers());
    Ok(())
}
