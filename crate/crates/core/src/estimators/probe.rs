use rayon::prelude::*;
use serde::Serialize;

use super::{base_centers, check_horizon, EstimatorConfig};
use crate::error::{ConfigError, EstimateError};
use crate::metric::{embedded_orbit, separation};
use crate::point::Point;
use crate::system::{stream_rng, MetricSystem};
use crate::zoo::SystemSpec;

const PROBE_STREAM: u64 = u64::MAX - 3;

/// Outcome of [`eq_region_probe`].
#[derive(Debug, Clone, Serialize)]
pub struct EqProbe {
    pub found: bool,
    pub witness_index: Option<usize>,
    #[serde(skip)]
    pub witness: Option<Point>,
    /// `radius_f` at the witness, or the smallest value seen when none qualifies.
    pub radius_f: f64,
    pub delta: f64,
    pub epsilon: f64,
}

/// Looks for a base center whose finite `radius_f` at the finest radius is
/// at most `epsilon`, i.e. a candidate witness for `Eq_ε`. A negative answer
/// is consistent with sensitivity at scale `epsilon` but proves nothing.
pub fn eq_region_probe(
    spec: &SystemSpec,
    epsilon: f64,
    cfg: &EstimatorConfig,
) -> Result<EqProbe, EstimateError> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(ConfigError::param("epsilon", "must be positive").into());
    }
    let sys = spec.system.as_ref();
    check_horizon(sys, cfg)?;
    let centers = base_centers(spec, cfg);
    let delta = cfg.finest_delta();
    let radii: Vec<_> = centers
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut rng = stream_rng(cfg.rng_seed, i as u64, PROBE_STREAM);
            let ys = sys
                .sample_ball(&mut rng, c, delta, cfg.nbhd_count)
                .map_err(|source| EstimateError::Sampler { center: i, source })?;
            let xo = embedded_orbit(sys, c, cfg.horizon);
            Ok::<f64, EstimateError>(
                ys.iter()
                    .map(|y| {
                        separation(sys, &xo, &embedded_orbit(sys, y, cfg.horizon), cfg.horizon).full
                    })
                    .fold(0.0, f64::max),
            )
        })
        .collect();
    let mut smallest = f64::INFINITY;
    for (i, r) in radii.into_iter().enumerate() {
        let r = r?;
        if r <= epsilon {
            return Ok(EqProbe {
                found: true,
                witness_index: Some(i),
                witness: Some(centers[i].clone()),
                radius_f: r,
                delta,
                epsilon,
            });
        }
        smallest = smallest.min(r);
    }
    Ok(EqProbe {
        found: false,
        witness_index: None,
        witness: None,
        radius_f: smallest,
        delta,
        epsilon,
    })
}

/// Return times of an orbit to a ball.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapStats {
    pub visits: usize,
    pub first_visit: Option<usize>,
    /// Gaps between consecutive visits; `None` with fewer than two visits.
    pub max_gap: Option<usize>,
    pub mean_gap: Option<f64>,
    /// Longest run of consecutive visit times.
    pub longest_run: usize,
    pub horizon: usize,
}

impl GapStats {
    pub fn gaps_defined(&self) -> bool {
        self.max_gap.is_some()
    }

    /// Statistics of a sorted list of visit times.
    pub fn from_visits(times: &[usize], horizon: usize) -> Self {
        let gaps: Vec<usize> = times.windows(2).map(|w| w[1] - w[0]).collect();
        let mut longest = usize::from(!times.is_empty());
        let mut run = longest;
        for &g in &gaps {
            run = if g == 1 { run + 1 } else { 1 };
            longest = longest.max(run);
        }
        GapStats {
            visits: times.len(),
            first_visit: times.first().copied(),
            max_gap: gaps.iter().copied().max(),
            mean_gap: (!gaps.is_empty())
                .then(|| (times[times.len() - 1] - times[0]) as f64 / gaps.len() as f64),
            longest_run: longest,
            horizon,
        }
    }
}

/// Visit times `n ∈ [0, N]` with `fⁿ(x) ∈ B(target, radius)`, summarized.
pub fn return_time_gaps(
    sys: &dyn MetricSystem,
    x: &Point,
    target: &Point,
    radius: f64,
    horizon: usize,
) -> Result<GapStats, ConfigError> {
    if radius.is_nan() || radius <= 0.0 {
        return Err(ConfigError::param("target_radius", "must be positive"));
    }
    if horizon == 0 {
        return Err(ConfigError::param("horizon", "must be >= 1"));
    }
    if let Some(max) = sys.max_horizon() {
        if horizon > max {
            return Err(ConfigError::HorizonTooLong { horizon, max });
        }
    }
    let t = sys.embed(target);
    let mut p = x.clone();
    let mut times = Vec::new();
    for n in 0..=horizon {
        if n > 0 {
            p = sys.step(&p);
        }
        if sys.embedded_distance(&sys.embed(&p), &t) <= radius {
            times.push(n);
        }
    }
    Ok(GapStats::from_visits(&times, horizon))
}
