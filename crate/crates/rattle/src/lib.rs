//! Monte Carlo toolkit for one-dimensional SDEs `dX_t = b(X_t, t) dt + a dB_t`
//! under slowly varying potentials.
//!
//! The crate covers the full pipeline behind "rattling" analyses of noisy
//! dynamical systems:
//!
//! * [`model`] — drift families (cubic well, Allee population model, OU,
//!   tabulated) with per-parameter time [`schedule`]s and validation;
//! * [`engine`] — Euler–Maruyama integration, recorded-sample exit detection
//!   against time-varying [`basin`]s, and reproducible parallel ensembles
//!   (bit-identical for any worker count; rayon behind the `parallel`
//!   feature, on by default);
//! * [`ews`] — rolling variance and lag autocorrelation, survivor-mean
//!   ensemble series, and Kendall-tau trend classification: rising
//!   indicators signal a flattening well (critical slowing down), falling
//!   indicators a narrowing well (critical speeding up);
//! * [`analytics`] — closed-form OU covariance/variance and the quasi-static
//!   variance laws used as oracles;
//! * [`timechange`] — empirical verification that contracting a potential by
//!   `k` matches speeding the exit clock by `k^2`.

pub mod analytics;
pub mod basin;
pub mod engine;
pub mod ews;
pub mod model;
pub mod sample;
pub mod schedule;
pub mod stats;
pub mod timechange;

pub use basin::{BasinSpec, Boundary};
pub use engine::{
    detect_exit, em_step, exit_time_distribution, run_ensemble, run_ensemble_sequential,
    simulate_path, split_seed, EngineError, InitialState, SimConfig,
};
pub use ews::{
    classify_trend, rolling_autocorrelation, rolling_variance, survivor_ensemble_variance,
    survivor_mean_series, EwsError, RollingStatSeries, StatKind, Trend, TrendLabel,
};
pub use model::{
    allee_equilibria, cubic_equilibria, validate_model, validate_model_over, Drift, EquilibriumSet,
    ModelError, PotentialModel, Stability, Violation,
};
pub use sample::{BoundarySide, EnsembleResult, ExitRecord, ExitTimeDistribution, SamplePath};
pub use schedule::{ParamSchedule, ScheduleKind};
pub use timechange::{
    narrow_model, verify_time_change, widen_is_slowdown, RescaleReport, RescaleSim, TimechangeError,
};
