//! Orbits and finite-horizon versions of `d_f`, `diam` and `radius_f`.
//!
//! `d_f(x, y) = sup_{n ≥ 0} d(fⁿx, fⁿy)` is truncated to `0 ≤ n ≤ N`; the
//! limsup of `d(fⁿx, fⁿy)` is replaced by its maximum over the tail window
//! `[⌈τN⌉, N]`.

use rayon::prelude::*;

use crate::error::SamplerError;
use crate::point::{Point, SymbolicWord};
use crate::system::{stream_rng, MetricSystem};

/// `fⁿ(x)`.
pub fn iterate(sys: &dyn MetricSystem, x: &Point, n: usize) -> Point {
    let mut p = x.clone();
    for _ in 0..n {
        p = sys.step(&p);
    }
    p
}

/// `[x, f(x), …, f^{n_max}(x)]`.
pub fn orbit_segment(sys: &dyn MetricSystem, x: &Point, n_max: usize) -> Vec<Point> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(x.clone());
    for k in 0..n_max {
        let next = sys.step(&out[k]);
        out.push(next);
    }
    out
}

/// An orbit after `embed`: flat coordinates for systems with a `flat_dim`,
/// points otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Orbit {
    Flat {
        dim: usize,
        coords: Vec<f64>,
    },
    Points(Vec<Point>),
    /// `len` successive left shifts of `start`.
    Shifts {
        start: SymbolicWord,
        len: usize,
    },
}

impl Orbit {
    pub fn len(&self) -> usize {
        match self {
            Orbit::Flat { dim, coords } => coords.len() / dim,
            Orbit::Points(p) => p.len(),
            Orbit::Shifts { len, .. } => *len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `n`-th embedded point.
    pub fn get(&self, n: usize) -> Point {
        match self {
            Orbit::Flat { dim, coords } => Point::Real(coords[n * dim..(n + 1) * dim].into()),
            Orbit::Points(p) => p[n].clone(),
            Orbit::Shifts { start, len } => {
                assert!(n < *len, "orbit index {n} out of range");
                Point::Word(start.shifted_by(n))
            }
        }
    }
}

/// Orbit of length `n_max + 1`, each point passed through `sys.embed`.
pub fn embedded_orbit(sys: &dyn MetricSystem, x: &Point, n_max: usize) -> Orbit {
    sys.embedded_orbit(x, n_max)
}

/// First index of the tail window `[⌈τN⌉, N]`.
pub fn tail_start(horizon: usize, tail_fraction: f64) -> usize {
    assert!(
        tail_fraction > 0.0 && tail_fraction < 1.0,
        "tail fraction must lie in (0, 1)"
    );
    ((tail_fraction * horizon as f64).ceil() as usize).clamp(1.min(horizon), horizon)
}

/// Maxima of `d(fⁿx, fⁿy)` over the windows the estimators need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Separation {
    /// `0 ≤ n ≤ N`.
    pub full: f64,
    /// `1 ≤ n ≤ N`.
    pub positive: f64,
    /// `⌈τN⌉ ≤ n ≤ N`.
    pub tail: f64,
}

impl Separation {
    /// Window maxima of `d(0), …, d(len − 1)`.
    #[inline]
    pub fn from_fn(len: usize, tail_from: usize, d: impl Fn(usize) -> f64) -> Self {
        let window = |lo: usize, hi: usize| (lo..hi).map(&d).fold(0.0f64, f64::max);
        if len == 0 {
            return Separation {
                full: 0.0,
                positive: 0.0,
                tail: 0.0,
            };
        }
        let head = d(0);
        let split = tail_from.clamp(1, len);
        let tail = window(split, len);
        let positive = window(1, split).max(tail);
        Separation {
            full: head.max(positive),
            positive,
            tail: if tail_from == 0 { tail.max(head) } else { tail },
        }
    }

    /// Window maxima of `d_0, d_1, …`.
    pub fn from_distances(ds: impl Iterator<Item = f64>, tail_from: usize) -> Self {
        let mut full = 0.0f64;
        let mut positive = 0.0f64;
        let mut tail = 0.0f64;
        for (n, d) in ds.enumerate() {
            full = full.max(d);
            if n >= 1 {
                positive = positive.max(d);
            }
            if n >= tail_from {
                tail = tail.max(d);
            }
        }
        Separation {
            full,
            positive,
            tail,
        }
    }
}

/// Separation profile of two embedded orbits of equal length.
pub fn separation(sys: &dyn MetricSystem, a: &Orbit, b: &Orbit, tail_from: usize) -> Separation {
    sys.orbit_separation(a, b, tail_from)
}

/// `max_{0 ≤ n ≤ N} d(fⁿx, fⁿy)`.
pub fn d_f_finite(sys: &dyn MetricSystem, x: &Point, y: &Point, horizon: usize) -> f64 {
    if x == y {
        return 0.0;
    }
    let mut p = x.clone();
    let mut q = y.clone();
    let mut best = sys.distance(&p, &q);
    for _ in 0..horizon {
        p = sys.step(&p);
        q = sys.step(&q);
        best = best.max(sys.distance(&p, &q));
    }
    best
}

/// `max_{⌈τN⌉ ≤ n ≤ N} d(fⁿx, fⁿy)`, the finite stand-in for the limsup.
pub fn tail_sep(
    sys: &dyn MetricSystem,
    x: &Point,
    y: &Point,
    horizon: usize,
    tail_fraction: f64,
) -> f64 {
    assert!(horizon >= 1, "tail separation needs a horizon >= 1");
    let from = tail_start(horizon, tail_fraction);
    if x == y {
        return 0.0;
    }
    let mut p = iterate(sys, x, from);
    let mut q = iterate(sys, y, from);
    let mut best = sys.distance(&p, &q);
    for _ in from..horizon {
        p = sys.step(&p);
        q = sys.step(&q);
        best = best.max(sys.distance(&p, &q));
    }
    best
}

/// Largest pairwise distance among `sample_count` uniform samples.
pub fn diam_estimate(
    sys: &dyn MetricSystem,
    sample_count: usize,
    rng_seed: u64,
) -> Result<f64, SamplerError> {
    let mut rng = stream_rng(rng_seed, u64::MAX, 0);
    let pts = sys.sample_uniform(&mut rng, sample_count.max(2));
    if pts.len() < 2 {
        return Err(SamplerError::TooFew {
            got: pts.len(),
            needed: 2,
        });
    }
    let emb: Vec<Point> = pts.iter().map(|p| sys.embed(p)).collect();
    // max is exact and order-independent, so the parallel reduction is
    // reproducible.
    Ok((0..emb.len())
        .into_par_iter()
        .map(|i| {
            emb[i + 1..]
                .iter()
                .map(|q| sys.embedded_distance(&emb[i], q))
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max))
}

/// `max d_f_finite(x, y, N)` over `nbhd_count` samples `y ∈ B(x, δ)`.
pub fn radius_f_finite(
    sys: &dyn MetricSystem,
    x: &Point,
    delta: f64,
    horizon: usize,
    nbhd_count: usize,
    rng_seed: u64,
) -> Result<f64, SamplerError> {
    assert!(delta > 0.0, "delta must be positive");
    let mut rng = stream_rng(rng_seed, u64::MAX - 1, 0);
    let ys = sys.sample_ball(&mut rng, x, delta, nbhd_count.max(1))?;
    let xo = embedded_orbit(sys, x, horizon);
    let tail_from = horizon.max(1);
    Ok(ys
        .iter()
        .map(|y| separation(sys, &xo, &embedded_orbit(sys, y, horizon), tail_from).full)
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_window_bounds() {
        assert_eq!(tail_start(500, 0.5), 250);
        assert_eq!(tail_start(1, 0.5), 1);
        assert_eq!(tail_start(10, 0.01), 1);
        assert_eq!(tail_start(10, 0.99), 10);
        assert_eq!(tail_start(0, 0.5), 0);
    }

    #[test]
    #[should_panic(expected = "tail fraction")]
    fn tail_fraction_must_be_proper() {
        tail_start(10, 1.0);
    }
}
