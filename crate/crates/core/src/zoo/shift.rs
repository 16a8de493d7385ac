//! The one-sided full shift on `k` symbols with `d(x, y) = 2^(−i)`, `i` the
//! first index where `x` and `y` differ.

use rand::Rng;

use crate::error::{ConfigError, SamplerError};
use crate::metric::{Orbit, Separation};
use crate::point::{Point, SymbolicWord};
use crate::system::{fill_ball, Flags, MetricSystem, SampleRng};

/// Symbols kept beyond the horizon so the metric still sees a long window
/// after `N` shifts.
pub const SHIFT_MARGIN: usize = 64;

#[derive(Debug, Clone, Copy)]
pub struct FullShift {
    alphabet: u8,
    word_len: usize,
}

impl FullShift {
    /// Words of length `horizon + SHIFT_MARGIN`.
    pub fn new(alphabet: usize, horizon: usize) -> Result<Self, ConfigError> {
        Self::with_length(alphabet, horizon + SHIFT_MARGIN, horizon)
    }

    /// Rejects `word_len < horizon + SHIFT_MARGIN`.
    pub fn with_length(
        alphabet: usize,
        word_len: usize,
        horizon: usize,
    ) -> Result<Self, ConfigError> {
        if !(2..=255).contains(&alphabet) {
            return Err(ConfigError::AlphabetSize(alphabet));
        }
        if word_len < horizon + SHIFT_MARGIN {
            return Err(ConfigError::param(
                "word_len",
                format!(
                    "{word_len} < horizon {horizon} + margin {SHIFT_MARGIN}; the shift would run off the stored prefix"
                ),
            ));
        }
        Ok(FullShift {
            alphabet: alphabet as u8,
            word_len,
        })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet as usize
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    /// Point with the given leading symbols, padded periodically.
    pub fn periodic_point(&self, pattern: &[u8]) -> Result<Point, ConfigError> {
        let symbols = (0..self.word_len)
            .map(|i| pattern[i % pattern.len()])
            .collect();
        SymbolicWord::new(symbols, self.alphabet()).map(Point::Word)
    }
}

fn word(p: &Point) -> &SymbolicWord {
    match p {
        Point::Word(w) => w,
        _ => panic!("full shift point must be a symbolic word, got {p:?}"),
    }
}

/// Smallest `m` with `2^(−m) ≤ radius`.
pub fn cylinder_depth(radius: f64) -> usize {
    let mut m = 0;
    while (-(m as f64)).exp2() > radius && m < 1100 {
        m += 1;
    }
    m
}

/// `2^(−i)`, exact.
fn pow2_neg(i: usize) -> f64 {
    if i <= 1022 {
        f64::from_bits(((1023 - i) as u64) << 52)
    } else {
        (-(i as f64)).exp2()
    }
}

pub(crate) fn word_distance(a: &SymbolicWord, b: &SymbolicWord) -> f64 {
    match a.first_difference(b) {
        Some(i) => pow2_neg(i),
        None => 0.0,
    }
}

impl MetricSystem for FullShift {
    fn step(&self, x: &Point) -> Point {
        Point::Word(word(x).shifted())
    }

    fn embedded_distance(&self, a: &Point, b: &Point) -> f64 {
        word_distance(word(a), word(b))
    }

    /// Every orbit point is a shift of the first, so one backward scan for
    /// the next differing symbol gives all distances.
    fn embedded_orbit(&self, x: &Point, n_max: usize) -> Orbit {
        Orbit::Shifts {
            start: word(x).clone(),
            len: n_max + 1,
        }
    }

    fn orbit_separation(&self, a: &Orbit, b: &Orbit, tail_from: usize) -> Separation {
        let (Orbit::Shifts { start: wa, len: la }, Orbit::Shifts { start: wb, len: lb }) = (a, b)
        else {
            panic!("full shift orbits are stored as shifts");
        };
        let len = (*la).min(*lb);
        let (x, y) = (wa.symbols(), wb.symbols());
        let common = x.len().min(y.len());
        let mut next = vec![usize::MAX; len];
        let mut upcoming = usize::MAX;
        for j in (0..common).rev() {
            if x[j] != y[j] {
                upcoming = j;
            }
            if j < len {
                next[j] = upcoming;
            }
        }
        Separation::from_fn(len, tail_from, |n| match next[n] {
            usize::MAX => 0.0,
            j => pow2_neg(j - n),
        })
    }

    fn sample_uniform(&self, rng: &mut SampleRng, count: usize) -> Vec<Point> {
        (0..count)
            .map(|_| Point::Word(SymbolicWord::random(self.word_len, self.alphabet, rng)))
            .collect()
    }

    fn sample_ball(
        &self,
        rng: &mut SampleRng,
        center: &Point,
        radius: f64,
        count: usize,
    ) -> Result<Vec<Point>, SamplerError> {
        let c = match center {
            Point::Word(w) if w.alphabet() == self.alphabet() => w,
            _ => return Err(SamplerError::ForeignPoint),
        };
        let len = c.len();
        let m = cylinder_depth(radius);
        if m >= len {
            return Ok(vec![center.clone(); count]);
        }
        let k = self.alphabet;
        fill_ball(
            rng,
            radius,
            count,
            |rng, shell| {
                let first = if shell {
                    (c.symbols()[m] + rng.random_range(1..k)) % k
                } else {
                    rng.random_range(0..k)
                };
                let tail: Vec<u8> = std::iter::once(first)
                    .chain((m + 1..len).map(|_| rng.random_range(0..k)))
                    .collect();
                Point::Word(c.with_prefix_of(m, tail.into_iter()))
            },
            |p| word_distance(word(p), c),
        )
    }

    fn known_diameter(&self) -> Option<f64> {
        Some(1.0)
    }

    fn flags(&self) -> Flags {
        Flags::MIXING
    }

    fn max_horizon(&self) -> Option<usize> {
        Some(self.word_len - SHIFT_MARGIN)
    }

    fn accepts(&self, p: &Point) -> bool {
        matches!(p, Point::Word(w) if w.alphabet() == self.alphabet())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::stream_rng;

    fn w(s: &[u8]) -> SymbolicWord {
        SymbolicWord::new(s.to_vec(), 2).unwrap()
    }

    #[test]
    fn metric_by_first_difference() {
        assert_eq!(word_distance(&w(&[0, 1, 1, 1]), &w(&[1, 0, 0, 0])), 1.0);
        assert_eq!(word_distance(&w(&[0, 1, 1, 1]), &w(&[0, 1, 0, 0])), 0.25);
        assert_eq!(word_distance(&w(&[0, 1, 1]), &w(&[0, 1, 1])), 0.0);
    }

    #[test]
    fn powers_of_two_are_exact() {
        for i in 0..1100 {
            assert_eq!(pow2_neg(i), (-(i as f64)).exp2(), "{i}");
        }
    }

    #[test]
    fn scanned_separation_matches_stepwise() {
        let sys = FullShift::new(2, 40).unwrap();
        let mut rng = stream_rng(3, 0, 0);
        let pts = sys.sample_uniform(&mut rng, 4);
        let near = sys.sample_ball(&mut rng, &pts[0], 1e-6, 4).unwrap();
        for a in pts.iter().chain(&near) {
            for b in pts.iter().chain(&near) {
                let (oa, ob) = (sys.embedded_orbit(a, 40), sys.embedded_orbit(b, 40));
                let stepwise =
                    Separation::from_fn(41, 20, |n| sys.embedded_distance(&oa.get(n), &ob.get(n)));
                assert_eq!(sys.orbit_separation(&oa, &ob, 20), stepwise);
                assert_eq!(oa.get(17), crate::metric::iterate(&sys, a, 17));
            }
        }
    }

    #[test]
    fn depth_of_radius() {
        assert_eq!(cylinder_depth(1.0), 0);
        assert_eq!(cylinder_depth(0.5), 1);
        assert_eq!(cylinder_depth(0.4), 2);
        assert_eq!(cylinder_depth(0.0015625), 10);
    }

    #[test]
    fn rejects_short_words_and_tiny_alphabets() {
        assert!(FullShift::new(1, 10).is_err());
        assert!(FullShift::with_length(2, 100, 50).is_err());
        assert!(FullShift::with_length(2, 114, 50).is_ok());
    }

    #[test]
    fn ball_samples_share_the_cylinder() {
        let sys = FullShift::new(3, 20).unwrap();
        let mut rng = stream_rng(9, 0, 0);
        let c = sys.sample_uniform(&mut rng, 1).pop().unwrap();
        let pts = sys.sample_ball(&mut rng, &c, 0.1, 30).unwrap();
        // depth 4: first 4 symbols shared, the shell point differs at index 4
        assert_eq!(sys.distance(&pts[0], &c), 1.0 / 16.0);
        for p in &pts {
            assert!(sys.distance(p, &c) <= 0.1);
        }
    }
}
