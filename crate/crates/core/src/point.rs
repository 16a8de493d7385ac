//! Points of the state spaces handled by the crate.
//!
//! Interval, circle and surface systems store real coordinates. Shift
//! systems store a finite prefix of an infinite word; stepping the shift
//! only advances an offset into a shared buffer, so orbits never copy
//! symbols. Dyadic interval maps (tent, doubling) use [`BinaryExpansion`],
//! an exact bit-string representation: their floating point orbits would
//! otherwise collapse onto `0` after about 53 steps.

use std::sync::Arc;

use rand::{Rng, RngCore};
use smallvec::SmallVec;

use crate::error::ConfigError;

pub type Coords = SmallVec<[f64; 3]>;

/// A point of some system's state space.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Real(Coords),
    Word(SymbolicWord),
    Binary(BinaryExpansion),
    Product(Box<[Point]>),
}

impl Point {
    /// Real-vector point; rejects NaN and infinities.
    pub fn real(coords: &[f64]) -> Result<Self, ConfigError> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(ConfigError::NonFiniteCoordinate);
        }
        Ok(Point::Real(Coords::from_slice(coords)))
    }

    #[inline]
    pub(crate) fn real1(x: f64) -> Self {
        Point::Real(Coords::from_buf_and_len([x, 0.0, 0.0], 1))
    }

    #[inline]
    pub fn as_real(&self) -> Option<&[f64]> {
        match self {
            Point::Real(c) => Some(c),
            _ => None,
        }
    }

    /// Human-readable coordinates for reports: real coordinates as-is, the
    /// value of a binary expansion, up to 16 leading symbols of a word, and
    /// the concatenation of the factors for products.
    pub fn summary(&self) -> Vec<f64> {
        match self {
            Point::Real(c) => c.to_vec(),
            Point::Binary(b) => vec![b.value()],
            Point::Word(w) => w.symbols().iter().take(16).map(|&s| s as f64).collect(),
            Point::Product(parts) => parts.iter().flat_map(Point::summary).collect(),
        }
    }
}

/// A finite prefix of a one-sided sequence over `{0, …, alphabet-1}`.
///
/// The visible word is `buffer[start..]`; shifting moves `start` forward.
#[derive(Debug, Clone)]
pub struct SymbolicWord {
    buffer: Arc<[u8]>,
    start: usize,
    alphabet: u8,
}

impl SymbolicWord {
    pub fn new(symbols: Vec<u8>, alphabet: usize) -> Result<Self, ConfigError> {
        if !(2..=255).contains(&alphabet) {
            return Err(ConfigError::AlphabetSize(alphabet));
        }
        let alphabet = alphabet as u8;
        if symbols.is_empty() {
            return Err(ConfigError::EmptyWord);
        }
        if let Some(&symbol) = symbols.iter().find(|&&s| s >= alphabet) {
            return Err(ConfigError::SymbolOutOfRange { symbol, alphabet });
        }
        Ok(SymbolicWord {
            buffer: symbols.into(),
            start: 0,
            alphabet,
        })
    }

    pub(crate) fn random(len: usize, alphabet: u8, rng: &mut impl Rng) -> Self {
        let symbols: Vec<u8> = (0..len).map(|_| rng.random_range(0..alphabet)).collect();
        SymbolicWord {
            buffer: symbols.into(),
            start: 0,
            alphabet,
        }
    }

    /// Copy of the first `keep` visible symbols followed by `tail`.
    pub(crate) fn with_prefix_of(&self, keep: usize, tail: impl Iterator<Item = u8>) -> Self {
        let symbols: Vec<u8> = self.symbols()[..keep].iter().copied().chain(tail).collect();
        SymbolicWord {
            buffer: symbols.into(),
            start: 0,
            alphabet: self.alphabet,
        }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.buffer[self.start..]
    }

    pub fn len(&self) -> usize {
        self.buffer.len() - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet as usize
    }

    /// Left shift: drops the leading symbol. The following stored symbol
    /// becomes visible at the end of the window that the metric reads.
    pub fn shifted(&self) -> Self {
        SymbolicWord {
            buffer: Arc::clone(&self.buffer),
            start: (self.start + 1).min(self.buffer.len()),
            alphabet: self.alphabet,
        }
    }

    /// `n` left shifts at once.
    pub fn shifted_by(&self, n: usize) -> Self {
        SymbolicWord {
            buffer: Arc::clone(&self.buffer),
            start: (self.start + n).min(self.buffer.len()),
            alphabet: self.alphabet,
        }
    }

    /// Index of the first differing symbol within the common stored prefix.
    pub fn first_difference(&self, other: &SymbolicWord) -> Option<usize> {
        self.symbols()
            .iter()
            .zip(other.symbols())
            .position(|(a, b)| a != b)
    }
}

impl PartialEq for SymbolicWord {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.symbols() == other.symbols()
    }
}

/// Exact binary expansion `0.b₀b₁b₂…` of a number in `[0, 1]`, possibly
/// complemented (`flipped`), with bits packed most significant first.
#[derive(Debug, Clone)]
pub struct BinaryExpansion {
    words: Arc<[u64]>,
    bit_len: usize,
    offset: usize,
    flipped: bool,
}

impl BinaryExpansion {
    fn from_words(words: Vec<u64>, bit_len: usize) -> Self {
        debug_assert!(words.len() * 64 >= bit_len);
        BinaryExpansion {
            words: words.into(),
            bit_len,
            offset: 0,
            flipped: false,
        }
    }

    /// Uniformly random expansion of `bit_len` bits.
    pub fn random(bit_len: usize, rng: &mut impl RngCore) -> Self {
        let words = (0..bit_len.div_ceil(64)).map(|_| rng.next_u64()).collect();
        Self::from_words(words, bit_len)
    }

    /// Expansion whose first 64 bits are `prefix`, followed by random bits.
    pub fn with_prefix(prefix: u64, bit_len: usize, rng: &mut impl RngCore) -> Self {
        let n = bit_len.div_ceil(64).max(1);
        let words = std::iter::once(prefix)
            .chain((1..n).map(|_| rng.next_u64()))
            .collect();
        Self::from_words(words, bit_len.max(64))
    }

    /// The dyadic rational nearest to `v` (64 bits), padded with zeros.
    pub fn from_f64(v: f64, bit_len: usize) -> Result<Self, ConfigError> {
        if !v.is_finite() || !(0.0..=1.0).contains(&v) {
            return Err(ConfigError::param("value", format!("{v} is not in [0, 1]")));
        }
        let n = bit_len.div_ceil(64).max(1);
        let mut words = vec![0u64; n];
        words[0] = fixed_point(v);
        Ok(Self::from_words(words, bit_len.max(64)))
    }

    /// Eventually periodic expansion repeating `pattern` (bits as 0/1).
    pub fn periodic(pattern: &[u8], bit_len: usize) -> Self {
        let n = bit_len.div_ceil(64);
        let mut words = vec![0u64; n];
        for i in 0..bit_len {
            if pattern[i % pattern.len()] != 0 {
                words[i / 64] |= 1u64 << (63 - i % 64);
            }
        }
        Self::from_words(words, bit_len)
    }

    /// Bits left before the stored expansion runs out.
    pub fn remaining(&self) -> usize {
        self.bit_len.saturating_sub(self.offset)
    }

    /// The next 64 bits as a fixed-point fraction (zeros past the end).
    pub fn readout(&self) -> u64 {
        let i = self.offset / 64;
        let sh = self.offset % 64;
        let word = |j: usize| self.words.get(j).copied().unwrap_or(0);
        let mut u = if sh == 0 {
            word(i)
        } else {
            (word(i) << sh) | (word(i + 1) >> (64 - sh))
        };
        let remaining = self.remaining();
        if remaining < 64 {
            u &= if remaining == 0 {
                0
            } else {
                !0u64 << (64 - remaining)
            };
        }
        if self.flipped {
            !u
        } else {
            u
        }
    }

    pub fn value(&self) -> f64 {
        self.readout() as f64 * (-64f64).exp2()
    }

    pub fn leading_bit(&self) -> bool {
        self.readout() >> 63 == 1
    }

    /// Drops the leading bit; complements the remainder when `complement` is set.
    pub fn shifted(&self, complement: bool) -> Self {
        BinaryExpansion {
            words: Arc::clone(&self.words),
            bit_len: self.bit_len,
            offset: (self.offset + 1).min(self.bit_len),
            flipped: self.flipped ^ complement,
        }
    }
}

impl PartialEq for BinaryExpansion {
    fn eq(&self, other: &Self) -> bool {
        self.remaining() == other.remaining() && {
            let mut a = self.clone();
            let mut b = other.clone();
            loop {
                if a.readout() != b.readout() {
                    break false;
                }
                if a.remaining() <= 64 {
                    break true;
                }
                a.offset += 64;
                b.offset += 64;
            }
        }
    }
}

/// `v ∈ [0, 1]` as a 64-bit fixed-point fraction, saturating at 1.
pub(crate) fn fixed_point(v: f64) -> u64 {
    let scaled = v * 64f64.exp2();
    if scaled >= u64::MAX as f64 {
        u64::MAX
    } else {
        scaled as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn real_points_must_be_finite() {
        assert!(Point::real(&[0.5, 1.0]).is_ok());
        assert_eq!(
            Point::real(&[f64::NAN]),
            Err(ConfigError::NonFiniteCoordinate)
        );
        assert_eq!(
            Point::real(&[f64::INFINITY]),
            Err(ConfigError::NonFiniteCoordinate)
        );
    }

    #[test]
    fn words_validate_alphabet_and_length() {
        assert_eq!(SymbolicWord::new(vec![], 2), Err(ConfigError::EmptyWord));
        assert_eq!(
            SymbolicWord::new(vec![0, 2], 2),
            Err(ConfigError::SymbolOutOfRange {
                symbol: 2,
                alphabet: 2
            })
        );
        assert_eq!(
            SymbolicWord::new(vec![0], 1),
            Err(ConfigError::AlphabetSize(1))
        );
    }

    #[test]
    fn shift_drops_leading_symbol() {
        let w = SymbolicWord::new(vec![0, 1, 1, 0, 1], 2).unwrap();
        let s = w.shifted();
        assert_eq!(s.symbols(), &[1, 1, 0, 1]);
        assert_eq!(w.first_difference(&s), Some(0));
        assert_eq!(s.first_difference(&s.clone()), None);
    }

    #[test]
    fn readout_crosses_word_boundaries() {
        let third = BinaryExpansion::periodic(&[0, 1], 300);
        let mut x = third.clone();
        for k in 0..200 {
            let expect = if k % 2 == 0 { 1.0 / 3.0 } else { 2.0 / 3.0 };
            assert!((x.value() - expect).abs() < 1e-15, "step {k}");
            x = x.shifted(false);
        }
    }

    #[test]
    fn complement_flag_inverts_value() {
        let x = BinaryExpansion::from_f64(0.25, 128).unwrap();
        let y = x.shifted(true);
        // 0.01000… shifts to 0.1000…, whose complement 0.0111… is 1/2 - 2^-64.
        assert!((y.value() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn readout_masks_past_the_end() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut x = BinaryExpansion::random(70, &mut rng);
        for _ in 0..70 {
            x = x.shifted(false);
        }
        assert_eq!(x.remaining(), 0);
        assert_eq!(x.readout(), 0);
    }

    #[test]
    fn fixed_point_saturates() {
        assert_eq!(fixed_point(1.0), u64::MAX);
        assert_eq!(fixed_point(0.0), 0);
        assert_eq!(fixed_point(0.5), 1u64 << 63);
    }
}
