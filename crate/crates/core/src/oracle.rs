//! Exact finite-horizon Lyapunov numbers of the full shift.
//!
//! A ball of radius `2^(−m)` is a cylinder of depth `m`. For a pair of words
//! the separation sequence depends only on the set `D` of positions where
//! they differ: `d(σⁿx, σⁿy) = 2^(−(i − n))` with `i` the first element of
//! `D` at or after `n`. All values are dyadic, so everything here is exact.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{EstimateError, OracleError};
use crate::estimators::{estimate_all, EstimatorConfig};
use crate::metric::tail_start;
use crate::point::SymbolicWord;
use crate::zoo::{cylinder_depth, make_full_shift, SHIFT_MARGIN};

/// Largest number of word pairs the enumeration will visit.
pub const PAIR_CAP: u128 = 1 << 24;

/// `2^(−exp)`, or zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    exp: Option<i32>,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { exp: None };
    pub const ONE: Dyadic = Dyadic { exp: Some(0) };

    pub fn pow2_neg(exp: i32) -> Self {
        Dyadic { exp: Some(exp) }
    }

    pub fn is_zero(self) -> bool {
        self.exp.is_none()
    }

    pub fn double(self) -> Self {
        Dyadic {
            exp: self.exp.map(|e| e - 1),
        }
    }

    pub fn to_f64(self) -> f64 {
        self.exp.map_or(0.0, |e| (-(e as f64)).exp2())
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.exp, other.exp) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => b.cmp(&a),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exp {
            None => write!(f, "0"),
            Some(e) if e <= 0 => write!(f, "{}", 1u128 << (-e).min(126)),
            Some(e) if e < 127 => write!(f, "1/{}", 1u128 << e),
            Some(e) => write!(f, "2^-{e}"),
        }
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Cylinder set `[prefix]` inside words of length `prefix.len() + free_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderSpec {
    prefix: Vec<u8>,
    free_len: usize,
    alphabet: usize,
}

impl CylinderSpec {
    pub fn new(prefix: Vec<u8>, free_len: usize, alphabet: usize) -> Result<Self, OracleError> {
        if alphabet < 2 {
            return Err(OracleError::Alphabet(alphabet));
        }
        if let Some(&symbol) = prefix.iter().find(|&&s| s as usize >= alphabet) {
            return Err(OracleError::PrefixSymbol { symbol, alphabet });
        }
        Ok(CylinderSpec {
            prefix,
            free_len,
            alphabet,
        })
    }

    pub fn depth(&self) -> usize {
        self.prefix.len()
    }

    pub fn word_len(&self) -> usize {
        self.prefix.len() + self.free_len
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn contains(&self, w: &SymbolicWord) -> bool {
        w.len() == self.word_len()
            && w.alphabet() == self.alphabet
            && w.symbols().starts_with(&self.prefix)
    }

    /// `k^(W − m)`.
    pub fn size(&self) -> u128 {
        (self.alphabet as u128).saturating_pow(self.free_len as u32)
    }

    /// The word whose free tail spells `index` in base `k`, least
    /// significant digit first.
    pub fn completion(&self, mut index: u128) -> SymbolicWord {
        let k = self.alphabet as u128;
        let mut symbols = self.prefix.clone();
        for _ in 0..self.free_len {
            symbols.push((index % k) as u8);
            index /= k;
        }
        SymbolicWord::new(symbols, self.alphabet).expect("valid by construction")
    }
}

/// Which pairs of a cylinder enter the `L2`/`L4` maxima (and the `L1`/`L3` balls).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSet {
    All,
    /// Only `y = x`.
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExactEstimates {
    #[serde(rename = "L1")]
    pub l1: Dyadic,
    #[serde(rename = "L2")]
    pub l2: Dyadic,
    #[serde(rename = "L3")]
    pub l3: Dyadic,
    #[serde(rename = "L4")]
    pub l4: Dyadic,
}

impl ExactEstimates {
    pub fn as_array(&self) -> [Dyadic; 4] {
        [self.l1, self.l2, self.l3, self.l4]
    }

    pub fn to_f64(&self) -> [f64; 4] {
        self.as_array().map(Dyadic::to_f64)
    }
}

impl fmt::Display for ExactEstimates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.l1, self.l2, self.l3, self.l4)
    }
}

/// Parameters shared by the enumeration and the closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleQuery {
    pub alphabet: usize,
    pub depth: usize,
    pub word_len: usize,
    pub horizon: usize,
    pub tail_fraction: f64,
}

impl OracleQuery {
    pub fn new(
        alphabet: usize,
        depth: usize,
        word_len: usize,
        horizon: usize,
        tail_fraction: f64,
    ) -> Self {
        OracleQuery {
            alphabet,
            depth,
            word_len,
            horizon,
            tail_fraction,
        }
    }

    fn validate(&self) -> Result<(), OracleError> {
        if self.alphabet < 2 {
            return Err(OracleError::Alphabet(self.alphabet));
        }
        if !(self.tail_fraction > 0.0 && self.tail_fraction < 1.0) {
            return Err(OracleError::TailFraction(self.tail_fraction));
        }
        let needed = self.horizon + self.depth + 1;
        if self.word_len < needed {
            return Err(OracleError::WordTooShort {
                length: self.word_len,
                needed,
            });
        }
        Ok(())
    }

    /// Pairs visited by the enumeration: `k^m · (k^(W−m))²`.
    pub fn pair_count(&self) -> u128 {
        let k = self.alphabet as u128;
        let tails = k.saturating_pow((self.word_len - self.depth.min(self.word_len)) as u32);
        k.saturating_pow(self.depth as u32)
            .saturating_mul(tails.saturating_mul(tails))
    }

    fn tail_from(&self) -> usize {
        tail_start(self.horizon, self.tail_fraction)
    }
}

/// Max of `d(σⁿx, σⁿy)` over `n ∈ [from, N]` for difference positions `mask`.
fn window_sep(mask: u64, from: usize, horizon: usize) -> Dyadic {
    let high = if from >= 64 { 0 } else { mask >> from };
    if high == 0 {
        return Dyadic::ZERO;
    }
    let first = from + high.trailing_zeros() as usize;
    if first <= horizon {
        Dyadic::ONE
    } else {
        Dyadic::pow2_neg((first - horizon) as i32)
    }
}

/// `(L1, L2, L3, L4)` by enumerating every pair of completions of every
/// depth-`m` cylinder, rejecting inputs above [`PAIR_CAP`] pairs.
pub fn exact_l_estimates(
    k: usize,
    m: usize,
    word_len: usize,
    horizon: usize,
    tail_fraction: f64,
) -> Result<ExactEstimates, OracleError> {
    exact_l_estimates_with(
        &OracleQuery::new(k, m, word_len, horizon, tail_fraction),
        PairSet::All,
    )
}

pub fn exact_l_estimates_with(
    q: &OracleQuery,
    pairs: PairSet,
) -> Result<ExactEstimates, OracleError> {
    q.validate()?;
    let count = q.pair_count();
    if count > PAIR_CAP || q.word_len > 64 {
        return Err(OracleError::TooLarge {
            pairs: count,
            cap: PAIR_CAP,
        });
    }
    let k = q.alphabet;
    let free = q.word_len - q.depth;
    let tails = k.pow(free as u32);
    // Difference masks only see the free positions, so tails are encoded
    // once as digit vectors and compared per pair.
    let digits: Vec<Vec<u8>> = (0..tails)
        .map(|mut t| {
            (0..free)
                .map(|_| {
                    let d = (t % k) as u8;
                    t /= k;
                    d
                })
                .collect()
        })
        .collect();
    let prefixes = k.pow(q.depth as u32);
    let from = q.tail_from();
    let per_cylinder: Vec<[Dyadic; 4]> = (0..prefixes)
        .into_par_iter()
        .map(|p| {
            let prefix: Vec<u8> = (0..q.depth)
                .map(|i| ((p / k.pow(i as u32)) % k) as u8)
                .collect();
            let cyl = CylinderSpec::new(prefix, free, k).expect("validated alphabet");
            cylinder_values(&cyl, &digits, from, q.horizon, pairs)
        })
        .collect();
    let mut out = [Dyadic::ONE, Dyadic::ONE, Dyadic::ONE, Dyadic::ONE];
    let mut first = true;
    for v in per_cylinder {
        for j in 0..4 {
            out[j] = if first { v[j] } else { out[j].min(v[j]) };
        }
        first = false;
    }
    Ok(ExactEstimates {
        l1: out[0],
        l2: out[1],
        l3: out[2],
        l4: out[3],
    })
}

fn cylinder_values(
    cyl: &CylinderSpec,
    digits: &[Vec<u8>],
    from: usize,
    horizon: usize,
    pairs: PairSet,
) -> [Dyadic; 4] {
    let m = cyl.depth();
    let binary = cyl.alphabet == 2;
    let mask_of = |a: usize, b: usize| -> u64 {
        if binary {
            ((a ^ b) as u64) << m
        } else {
            digits[a]
                .iter()
                .zip(&digits[b])
                .enumerate()
                .filter(|(_, (x, y))| x != y)
                .fold(0u64, |acc, (i, _)| acc | 1 << (m + i))
        }
    };
    let mut l1: Option<Dyadic> = None;
    let mut l3: Option<Dyadic> = None;
    let mut l2 = Dyadic::ZERO;
    let mut l4 = Dyadic::ZERO;
    for x in 0..digits.len() {
        let (mut row_full, mut row_tail) = (Dyadic::ZERO, Dyadic::ZERO);
        let ys = match pairs {
            PairSet::All => 0..digits.len(),
            PairSet::Diagonal => x..x + 1,
        };
        for y in ys {
            let mask = mask_of(x, y);
            row_full = row_full.max(window_sep(mask, 0, horizon));
            row_tail = row_tail.max(window_sep(mask, from, horizon));
        }
        l1 = Some(l1.map_or(row_full, |v| v.min(row_full)));
        l3 = Some(l3.map_or(row_tail, |v| v.min(row_tail)));
        l2 = l2.max(row_full);
        l4 = l4.max(row_tail);
    }
    [
        l1.unwrap_or(Dyadic::ZERO),
        l2,
        l3.unwrap_or(Dyadic::ZERO),
        l4,
    ]
}

/// The same four numbers without enumeration: every cylinder admits a pair
/// differing at exactly one chosen free position, so each value is the
/// window separation of the best single position.
pub fn closed_form(q: &OracleQuery) -> Result<ExactEstimates, OracleError> {
    q.validate()?;
    let best = |from: usize| {
        let i = from.max(q.depth);
        if i <= q.horizon {
            Dyadic::ONE
        } else if i < q.word_len {
            Dyadic::pow2_neg((i - q.horizon) as i32)
        } else {
            Dyadic::ZERO
        }
    };
    let full = best(0);
    let tail = best(q.tail_from());
    Ok(ExactEstimates {
        l1: full,
        l2: full,
        l3: tail,
        l4: tail,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMethod {
    Enumeration,
    ClosedForm,
}

/// Sampled estimates of the full shift against the exact values.
#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub alphabet: usize,
    pub depth: usize,
    pub word_len: usize,
    pub horizon: usize,
    pub method: OracleMethod,
    pub exact: ExactEstimates,
    pub estimated: [f64; 4],
    pub gaps: [f64; 4],
    /// Fewer than 64 samples per ball: large gaps are expected.
    pub under_sampled: bool,
}

impl OracleComparison {
    pub fn max_gap(&self) -> f64 {
        self.gaps.iter().copied().fold(0.0, f64::max)
    }
}

/// Runs `estimate_all` on `full_shift:k` and the oracle at the cylinder depth
/// of the finest radius. Enumerates when that fits under the cap and uses
/// the closed form otherwise.
pub fn oracle_vs_estimator(
    k: usize,
    cfg: &EstimatorConfig,
) -> Result<OracleComparison, EstimateError> {
    let spec = make_full_shift(k, cfg.horizon)?;
    let report = estimate_all(&spec, cfg)?;
    let q = OracleQuery::new(
        k,
        cylinder_depth(cfg.finest_delta()),
        cfg.horizon + SHIFT_MARGIN,
        cfg.horizon,
        cfg.tail_fraction,
    );
    let (exact, method) = match exact_l_estimates_with(&q, PairSet::All) {
        Ok(e) => (e, OracleMethod::Enumeration),
        Err(OracleError::TooLarge { .. }) => (closed_form(&q)?, OracleMethod::ClosedForm),
        Err(e) => return Err(e.into()),
    };
    let est = report.numbers();
    let ex = exact.to_f64();
    Ok(OracleComparison {
        alphabet: k,
        depth: q.depth,
        word_len: q.word_len,
        horizon: q.horizon,
        method,
        exact,
        estimated: est,
        gaps: [0, 1, 2, 3].map(|i| (est[i] - ex[i]).abs()),
        under_sampled: cfg.nbhd_count < 64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_order_and_display() {
        assert!(Dyadic::ZERO < Dyadic::pow2_neg(40));
        assert!(Dyadic::pow2_neg(3) < Dyadic::pow2_neg(1));
        assert_eq!(Dyadic::pow2_neg(1).double(), Dyadic::ONE);
        assert_eq!(Dyadic::pow2_neg(10).to_string(), "1/1024");
        assert_eq!(Dyadic::ONE.to_string(), "1");
        assert_eq!(Dyadic::ONE.double().to_string(), "2");
        assert_eq!(Dyadic::ZERO.to_string(), "0");
    }

    #[test]
    fn window_separation() {
        assert_eq!(window_sep(0, 0, 8), Dyadic::ZERO);
        assert_eq!(window_sep(1 << 5, 0, 8), Dyadic::ONE);
        assert_eq!(window_sep(1 << 11, 0, 8), Dyadic::pow2_neg(3));
        // difference before the window does not count
        assert_eq!(window_sep(1 << 2, 4, 8), Dyadic::ZERO);
        assert_eq!(window_sep((1 << 2) | (1 << 9), 4, 8), Dyadic::pow2_neg(1));
    }

    #[test]
    fn cylinder_completions() {
        let c = CylinderSpec::new(vec![1, 0], 3, 2).unwrap();
        assert_eq!(c.size(), 8);
        let w = c.completion(0b110);
        assert_eq!(w.symbols(), &[1, 0, 0, 1, 1]);
        assert!(c.contains(&w));
        assert!(!c.contains(&SymbolicWord::new(vec![0, 0, 0, 1, 1], 2).unwrap()));
    }

    #[test]
    fn rejections() {
        assert_eq!(
            exact_l_estimates(1, 0, 4, 0, 0.5),
            Err(OracleError::Alphabet(1))
        );
        assert!(matches!(
            exact_l_estimates(2, 2, 10, 8, 0.5),
            Err(OracleError::WordTooShort { needed: 11, .. })
        ));
        assert!(matches!(
            exact_l_estimates(2, 2, 30, 8, 0.5),
            Err(OracleError::TooLarge { .. })
        ));
        assert!(matches!(
            exact_l_estimates(2, 2, 12, 8, 1.0),
            Err(OracleError::TailFraction(_))
        ));
    }
}
