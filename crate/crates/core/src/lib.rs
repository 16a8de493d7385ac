//! Numerical estimation of the four Lyapunov numbers of a discrete
//! dynamical system `(X, f)` on a compact metric space.
//!
//! | number | name        | separation measured by                         |
//! |--------|-------------|------------------------------------------------|
//! | `L1`   | 𝕃_r         | sup over `n` of `d(fⁿx, fⁿy)`, `x` the center   |
//! | `L2`   | 𝕃_d         | the same, any pair `x, y` in the neighborhood   |
//! | `L3`   | 𝕃̄_r        | limsup of `d(fⁿx, fⁿy)`, `x` the center         |
//! | `L4`   | 𝕃̄_d        | limsup, any pair in the neighborhood            |
//!
//! Suprema over `n` are truncated at a horizon `N`, limsups are replaced by
//! the maximum over the tail window `[⌈τN⌉, N]`, and infima over
//! neighborhoods become minima over sampled balls at a decreasing sequence
//! of radii. Every estimate reports its full convergence curve.
//!
//! Modules:
//! - [`point`] and [`system`]: state representations and the [`MetricSystem`] trait;
//! - [`metric`]: orbits and finite-horizon `d_f`, `diam`, `radius_f`;
//! - [`estimators`]: the four estimators, inequality checks, and probes;
//! - [`zoo`]: concrete systems and the name registry;
//! - [`oracle`]: exact enumeration on the full shift;
//! - [`report`]: JSON/CSV output, theorem checks, and the command layer
//!   behind the `lyapnum` binary.
//!
//! Runnable walkthroughs live in `examples/`.

pub mod error;
pub mod estimators;
pub mod metric;
pub mod oracle;
pub mod point;
pub mod report;
pub mod system;
pub mod zoo;

pub use error::{ConfigError, EstimateError, OracleError, SamplerError};
pub use estimators::{estimate_all, EstimatorConfig, LyapunovReport};
pub use point::{BinaryExpansion, Point, SymbolicWord};
pub use system::{Flags, MetricSystem, SampleRng, ScaledMetric, Trivalent};
pub use zoo::SystemSpec;
