//! Multi-scale estimation of the four Lyapunov numbers.
//!
//! For each radius `δ_k = δ₀·q^k` and each base center `x`, one ball
//! `B(x, δ_k)` is sampled and shared by all four estimators:
//!
//! - `L1`, `L3`: max over the `M` ball samples `y` of the full-horizon and
//!   tail-window separation of `(x, y)`;
//! - `L2`, `L4`: the same over the `M` center pairs plus `P` random pairs
//!   drawn from the pool `{x, y₁, …, y_M}`.
//!
//! The level estimate is the min over centers. Because `L2` ranges over a
//! superset of the `L1` pairs and a full window contains the tail window,
//! `L2 ≥ L1 ≥ L3`, `L2 ≥ L4 ≥ L3` hold exactly in every report.

mod checks;
mod probe;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use checks::{check_inequalities, inequality_rows, Relation, Verdict};
pub use probe::{eq_region_probe, return_time_gaps, EqProbe, GapStats};

use crate::error::{ConfigError, EstimateError};
use crate::metric::{diam_estimate, embedded_orbit, separation, tail_start, Orbit};
use crate::point::Point;
use crate::system::{stream_rng, MetricSystem};
use crate::zoo::SystemSpec;

/// Uniform samples used when a system declares no diameter.
pub const DIAMETER_SAMPLES: usize = 2000;

/// Theorem and inequality slack as a fraction of the diameter.
pub const DEFAULT_SLACK_FRACTION: f64 = 0.05;

// Stream ids for draws that do not belong to a (center, level) pair.
const CENTER_STREAM: u64 = u64::MAX - 2;

/// Sampling, horizon and seed knobs of one estimation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub delta0: f64,
    pub delta_factor: f64,
    pub delta_levels: usize,
    pub horizon: usize,
    pub tail_fraction: f64,
    pub base_count: usize,
    pub nbhd_count: usize,
    pub pair_count: usize,
    pub rng_seed: u64,
    /// Restrict `L2`/`L4` separations to `n ≥ 1`.
    #[serde(default)]
    pub strict_paper_n: bool,
    /// Level-`k` candidates include the samples of every finer level.
    #[serde(default = "default_nested")]
    pub nested: bool,
}

fn default_nested() -> bool {
    true
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self::desk()
    }
}

impl EstimatorConfig {
    pub fn desk() -> Self {
        EstimatorConfig {
            delta0: 0.1,
            delta_factor: 0.5,
            delta_levels: 7,
            horizon: 500,
            tail_fraction: 0.5,
            base_count: 200,
            nbhd_count: 400,
            pair_count: 400,
            rng_seed: 42,
            strict_paper_n: false,
            nested: true,
        }
    }

    /// Desk counts divided by ten, horizon 100.
    pub fn smoke() -> Self {
        EstimatorConfig {
            horizon: 100,
            base_count: 20,
            nbhd_count: 40,
            pair_count: 40,
            ..Self::desk()
        }
    }

    pub fn preset(name: &str) -> Result<Self, ConfigError> {
        match name {
            "desk" => Ok(Self::desk()),
            "smoke" => Ok(Self::smoke()),
            other => Err(ConfigError::param(
                "preset",
                format!("unknown preset `{other}` (expected desk or smoke)"),
            )),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = [
            ("delta_levels", self.delta_levels),
            ("horizon", self.horizon),
            ("base_count", self.base_count),
            ("nbhd_count", self.nbhd_count),
            ("pair_count", self.pair_count),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(ConfigError::param(name, "must be >= 1"));
            }
        }
        if !(self.delta0.is_finite() && self.delta0 > 0.0) {
            return Err(ConfigError::param(
                "delta0",
                format!("{} is not a positive radius", self.delta0),
            ));
        }
        if !(self.delta_factor > 0.0 && self.delta_factor < 1.0) {
            return Err(ConfigError::param(
                "delta_factor",
                format!("{} is not in (0, 1)", self.delta_factor),
            ));
        }
        if !(self.tail_fraction > 0.0 && self.tail_fraction < 1.0) {
            return Err(ConfigError::param(
                "tail_fraction",
                format!("{} is not in (0, 1)", self.tail_fraction),
            ));
        }
        let d = self.deltas();
        if d.last().is_none_or(|&x| x <= 0.0) || d.windows(2).any(|w| w[1] >= w[0]) {
            return Err(ConfigError::param(
                "delta_levels",
                "radii underflow before the last level",
            ));
        }
        Ok(())
    }

    /// `δ₀·q^k` for `k < delta_levels`.
    pub fn deltas(&self) -> Vec<f64> {
        (0..self.delta_levels)
            .map(|k| self.delta0 * self.delta_factor.powi(k as i32))
            .collect()
    }

    pub fn finest_delta(&self) -> f64 {
        self.delta0 * self.delta_factor.powi(self.delta_levels as i32 - 1)
    }
}

/// Which of the four numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Number {
    L1,
    L2,
    L3,
    L4,
}

impl Number {
    pub const ALL: [Number; 4] = [Number::L1, Number::L2, Number::L3, Number::L4];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn id(self) -> &'static str {
        ["L1", "L2", "L3", "L4"][self.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub delta: f64,
    pub estimate: f64,
    /// Index of the minimizing base center (earliest on ties).
    pub minimizer: usize,
    /// Coordinates of that center, as given by [`Point::summary`].
    pub minimizer_coords: Vec<f64>,
}

/// Estimates at every radius, coarsest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceCurve {
    pub levels: Vec<CurvePoint>,
    /// Estimates never increase as the radius shrinks.
    pub monotone: bool,
}

impl ConvergenceCurve {
    fn new(levels: Vec<CurvePoint>) -> Self {
        let monotone = levels.windows(2).all(|w| w[1].estimate <= w[0].estimate);
        ConvergenceCurve { levels, monotone }
    }

    /// Finest-level estimate.
    pub fn value(&self) -> f64 {
        self.levels.last().map_or(0.0, |p| p.estimate)
    }

    pub fn finest(&self) -> &CurvePoint {
        self.levels.last().expect("curves have at least one level")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curves {
    #[serde(rename = "L1")]
    pub l1: ConvergenceCurve,
    #[serde(rename = "L2")]
    pub l2: ConvergenceCurve,
    #[serde(rename = "L3")]
    pub l3: ConvergenceCurve,
    #[serde(rename = "L4")]
    pub l4: ConvergenceCurve,
}

impl Curves {
    pub fn get(&self, n: Number) -> &ConvergenceCurve {
        match n {
            Number::L1 => &self.l1,
            Number::L2 => &self.l2,
            Number::L3 => &self.l3,
            Number::L4 => &self.l4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiameterSource {
    Known,
    Estimated,
}

/// The four finest-level estimates with their curves and verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LyapunovReport {
    pub system: String,
    pub config: EstimatorConfig,
    pub diameter: f64,
    pub diameter_source: DiameterSource,
    pub base_centers: usize,
    #[serde(rename = "L1")]
    pub l1: f64,
    #[serde(rename = "L2")]
    pub l2: f64,
    #[serde(rename = "L3")]
    pub l3: f64,
    #[serde(rename = "L4")]
    pub l4: f64,
    pub curves: Curves,
    pub slack: f64,
    pub inequalities: Vec<Verdict>,
}

impl LyapunovReport {
    pub fn numbers(&self) -> [f64; 4] {
        [self.l1, self.l2, self.l3, self.l4]
    }

    pub fn get(&self, n: Number) -> f64 {
        self.numbers()[n.index()]
    }

    pub fn all_inequalities_pass(&self) -> bool {
        self.inequalities.iter().all(|v| v.pass)
    }
}

/// Per-center ball values, indexed `[center][level][number]`.
struct Sweep {
    centers: Vec<Point>,
    values: Vec<Vec<[f64; 4]>>,
}

/// B uniform centers followed by the system's hard points.
pub fn base_centers(spec: &SystemSpec, cfg: &EstimatorConfig) -> Vec<Point> {
    let mut rng = stream_rng(cfg.rng_seed, CENTER_STREAM, 0);
    let mut centers = spec.system.sample_uniform(&mut rng, cfg.base_count);
    centers.extend(spec.hard_points.iter().cloned());
    centers
}

fn check_horizon(sys: &dyn MetricSystem, cfg: &EstimatorConfig) -> Result<(), ConfigError> {
    cfg.validate()?;
    match sys.max_horizon() {
        Some(max) if cfg.horizon > max => Err(ConfigError::HorizonTooLong {
            horizon: cfg.horizon,
            max,
        }),
        _ => Ok(()),
    }
}

fn sweep(spec: &SystemSpec, cfg: &EstimatorConfig) -> Result<Sweep, EstimateError> {
    let sys = spec.system.as_ref();
    check_horizon(sys, cfg)?;
    let centers = base_centers(spec, cfg);
    let deltas = cfg.deltas();
    let tail_from = tail_start(cfg.horizon, cfg.tail_fraction);
    let results: Vec<_> = centers
        .par_iter()
        .enumerate()
        .map(|(i, c)| center_values(sys, i, c, &deltas, tail_from, cfg))
        .collect();
    let mut values = Vec::with_capacity(results.len());
    for r in results {
        values.push(r?);
    }
    Ok(Sweep { centers, values })
}

fn center_values(
    sys: &dyn MetricSystem,
    index: usize,
    center: &Point,
    deltas: &[f64],
    tail_from: usize,
    cfg: &EstimatorConfig,
) -> Result<Vec<[f64; 4]>, EstimateError> {
    let n = cfg.horizon;
    let xo = embedded_orbit(sys, center, n);
    let mut out = vec![[0.0f64; 4]; deltas.len()];
    let mut pool: Vec<Orbit> = Vec::with_capacity(cfg.nbhd_count);
    for (k, &delta) in deltas.iter().enumerate() {
        let mut rng = stream_rng(cfg.rng_seed, index as u64, k as u64);
        let ys = sys
            .sample_ball(&mut rng, center, delta, cfg.nbhd_count)
            .map_err(|source| EstimateError::Sampler {
                center: index,
                source,
            })?;
        pool.clear();
        let mut v = [0.0f64; 4];
        for y in &ys {
            let yo = embedded_orbit(sys, y, n);
            let s = separation(sys, &xo, &yo, tail_from);
            v[0] = v[0].max(s.full);
            v[1] = v[1].max(if cfg.strict_paper_n {
                s.positive
            } else {
                s.full
            });
            v[2] = v[2].max(s.tail);
            v[3] = v[3].max(s.tail);
            pool.push(yo);
        }
        let m = pool.len();
        if m > 0 {
            for _ in 0..cfg.pair_count {
                let a = rng.random_range(0..=m);
                let mut b = rng.random_range(0..m);
                if b >= a {
                    b += 1;
                }
                let orbit = |j: usize| if j == 0 { &xo } else { &pool[j - 1] };
                let s = separation(sys, orbit(a), orbit(b), tail_from);
                v[1] = v[1].max(if cfg.strict_paper_n {
                    s.positive
                } else {
                    s.full
                });
                v[3] = v[3].max(s.tail);
            }
        }
        out[k] = v;
    }
    if cfg.nested {
        for k in (0..out.len().saturating_sub(1)).rev() {
            let finer = out[k + 1];
            for (v, f) in out[k].iter_mut().zip(finer) {
                *v = v.max(f);
            }
        }
    }
    Ok(out)
}

fn curve(sweep: &Sweep, deltas: &[f64], number: Number) -> ConvergenceCurve {
    let j = number.index();
    let levels = deltas
        .iter()
        .enumerate()
        .map(|(k, &delta)| {
            let mut best = 0;
            for (i, v) in sweep.values.iter().enumerate() {
                if v[k][j] < sweep.values[best][k][j] {
                    best = i;
                }
            }
            CurvePoint {
                delta,
                estimate: sweep.values[best][k][j],
                minimizer: best,
                minimizer_coords: sweep.centers[best].summary(),
            }
        })
        .collect();
    ConvergenceCurve::new(levels)
}

fn estimate_one(
    spec: &SystemSpec,
    cfg: &EstimatorConfig,
    n: Number,
) -> Result<(f64, ConvergenceCurve), EstimateError> {
    let s = sweep(spec, cfg)?;
    let c = curve(&s, &cfg.deltas(), n);
    Ok((c.value(), c))
}

/// `L1`: min over centers of max over ball samples of `d_f` up to `N`.
pub fn estimate_l1(
    spec: &SystemSpec,
    cfg: &EstimatorConfig,
) -> Result<(f64, ConvergenceCurve), EstimateError> {
    estimate_one(spec, cfg, Number::L1)
}

/// `L2`: as `L1`, over sampled pairs of the ball.
pub fn estimate_l2(
    spec: &SystemSpec,
    cfg: &EstimatorConfig,
) -> Result<(f64, ConvergenceCurve), EstimateError> {
    estimate_one(spec, cfg, Number::L2)
}

/// `L3`: as `L1` with the tail-window separation.
pub fn estimate_l3(
    spec: &SystemSpec,
    cfg: &EstimatorConfig,
) -> Result<(f64, ConvergenceCurve), EstimateError> {
    estimate_one(spec, cfg, Number::L3)
}

/// `L4`: as `L2` with the tail-window separation.
pub fn estimate_l4(
    spec: &SystemSpec,
    cfg: &EstimatorConfig,
) -> Result<(f64, ConvergenceCurve), EstimateError> {
    estimate_one(spec, cfg, Number::L4)
}

/// Known diameter, or the sampled estimate when none is declared.
pub fn diameter_of(
    sys: &dyn MetricSystem,
    seed: u64,
) -> Result<(f64, DiameterSource), EstimateError> {
    match sys.known_diameter() {
        Some(d) => Ok((d, DiameterSource::Known)),
        None => Ok((
            diam_estimate(sys, DIAMETER_SAMPLES, seed)?,
            DiameterSource::Estimated,
        )),
    }
}

/// All four numbers from one matched sweep, with inequality verdicts at
/// slack `0.05·diam`.
pub fn estimate_all(
    spec: &SystemSpec,
    cfg: &EstimatorConfig,
) -> Result<LyapunovReport, EstimateError> {
    let s = sweep(spec, cfg)?;
    let deltas = cfg.deltas();
    let [l1, l2, l3, l4] = Number::ALL.map(|n| curve(&s, &deltas, n));
    let (diameter, diameter_source) = diameter_of(spec.system.as_ref(), cfg.rng_seed)?;
    let slack = DEFAULT_SLACK_FRACTION * diameter;
    let numbers = [l1.value(), l2.value(), l3.value(), l4.value()];
    Ok(LyapunovReport {
        system: spec.name.clone(),
        config: cfg.clone(),
        diameter,
        diameter_source,
        base_centers: s.centers.len(),
        l1: numbers[0],
        l2: numbers[1],
        l3: numbers[2],
        l4: numbers[3],
        curves: Curves { l1, l2, l3, l4 },
        slack,
        inequalities: inequality_rows(numbers, diameter, slack),
    })
}
