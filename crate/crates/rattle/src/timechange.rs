//! Space-contraction / time-change equivalence checks.
//!
//! Contracting a frozen potential by `k` (`V(x) -> V(kx)`, diffusion
//! unchanged) gives a process whose drift at `x` is `k * b(kx)`; started at
//! `x0/k` inside the basin `(lower/k, upper/k)`, its exit-time CDF satisfies
//! `p_hat_tau(x0/k) = p_{k^2 tau}(x0)`. [`verify_time_change`] tests that
//! identity empirically with a two-sample Kolmogorov–Smirnov comparison
//! between a narrowed ensemble and a time-rescaled baseline ensemble.
//!
//! The narrowed side integrates with `dt/k^2` and records every
//! `dt_record/k^2`, so both ensembles discretize the *same* rescaled chain
//! and the KS statistic carries sampling noise only.

use crate::basin::BasinSpec;
use crate::engine::{run_ensemble, split_seed, EngineError, InitialState, SimConfig};
use crate::model::{Drift, DriftTable, PotentialModel};
use crate::schedule::ParamSchedule;
use thiserror::Error;

/// Asymptotic two-sample KS coefficient at the 1% level: the test passes
/// when `D < KS_COEFF_1PCT * sqrt(2/n)` for equal sample sizes `n`.
pub const KS_COEFF_1PCT: f64 = 1.628;

#[derive(Debug, Error)]
pub enum TimechangeError {
    #[error("contraction factor k must be positive and finite (got {0})")]
    BadFactor(f64),
    #[error("the equivalence holds for frozen potentials; remove parameter schedules first")]
    ScheduledModel,
    #[error("basin boundaries must be static for rescaling")]
    DynamicBasin,
    #[error("no exits in either ensemble; extend the horizon or enlarge the noise")]
    Inconclusive,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Outcome of one exit-time rescaling comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct RescaleReport {
    pub k: f64,
    /// Two-sample KS distance between the narrowed CDF at `tau` and the
    /// baseline CDF at `k^2 tau`.
    pub ks_distance: f64,
    /// 1%-level pass threshold `KS_COEFF_1PCT * sqrt(2/n)`.
    pub threshold: f64,
    pub n_per_ensemble: usize,
    /// Evaluation grid (narrowed time axis): pooled exit times of both sides.
    pub tau_grid: Vec<f64>,
    pub pass: bool,
}

/// Base-side discretization for the comparison; the narrowed side divides
/// both steps by `k^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaleSim {
    pub dt: f64,
    pub dt_record: f64,
}

impl Default for RescaleSim {
    fn default() -> Self {
        Self { dt: 0.005, dt_record: 0.05 }
    }
}

/// Contract the spatial axis of a frozen model by `k`: the returned model's
/// drift at `x` equals `k * b(kx)`; the noise amplitude is unchanged.
///
/// Every built-in family has a closed form under contraction:
/// cubic `(alpha, beta) -> (alpha, k*beta)`, OU `b -> k^2 b`,
/// Allee `(r, beta) -> (k*r, beta/k)`, and tables rescale their knots.
pub fn narrow_model(model: &PotentialModel, k: f64) -> Result<PotentialModel, TimechangeError> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(TimechangeError::BadFactor(k));
    }
    if model.has_schedules() {
        return Err(TimechangeError::ScheduledModel);
    }
    let constant_of = |s: &ParamSchedule, t: f64| s.value(t);
    let drift = match &model.drift {
        Drift::Cubic { alpha, beta } => Drift::Cubic {
            alpha: *alpha,
            beta: ParamSchedule::constant(constant_of(beta, 0.0) * k),
        },
        Drift::OuLinear { b } => Drift::OuLinear {
            b: ParamSchedule::constant(constant_of(b, 0.0) * k * k),
        },
        Drift::Allee { r, a, c, beta } => {
            // beta/k narrows the geometry but also shallows the well by 1/k;
            // r*k restores the depth so the drift is exactly k*b(kx).
            return Ok(PotentialModel::allee_scheduled(
                ParamSchedule::constant(constant_of(r, 0.0) * k),
                *a,
                *c,
                ParamSchedule::constant(constant_of(beta, 0.0) / k),
                model.noise_amplitude,
            ));
        }
        Drift::Table(table) => {
            let knots: Vec<(f64, f64)> = table.knots().map(|(x, v)| (x / k, k * v)).collect();
            Drift::Table(DriftTable::new(&knots).expect("rescaled knots stay strictly increasing"))
        }
    };
    Ok(PotentialModel { drift, noise_amplitude: model.noise_amplitude })
}

/// Empirically verify `p_hat_tau(x0/k) = p_{k^2 tau}(x0)`.
///
/// Ensemble A runs the narrowed model from `x0/k` in the basin
/// `(lower/k, upper/k)` over `horizon`; ensemble B runs the original model
/// from `x0` over `horizon * k^2`. Both stop on exit. Their exit-time CDFs
/// are compared on the narrowed time axis at the 1% KS level. Paths that
/// never exit stay in the CDF denominators (the comparison grid never
/// extends past the common effective horizon).
#[allow(clippy::too_many_arguments)]
pub fn verify_time_change(
    model: &PotentialModel,
    basin: &BasinSpec,
    x0: f64,
    k: f64,
    n: usize,
    horizon: f64,
    master_seed: u64,
    sim: &RescaleSim,
) -> Result<RescaleReport, TimechangeError> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(TimechangeError::BadFactor(k));
    }
    let narrowed = narrow_model(model, k)?;
    let narrowed_basin = basin.divided_by(k).ok_or(TimechangeError::DynamicBasin)?;
    let k2 = k * k;

    let cfg_narrow = SimConfig {
        t0: 0.0,
        horizon,
        dt: sim.dt / k2,
        dt_record: sim.dt_record / k2,
        x0: InitialState::Value(x0 / k),
        stop_on_exit: true,
        basin: narrowed_basin,
    };
    let cfg_base = SimConfig {
        t0: 0.0,
        horizon: horizon * k2,
        dt: sim.dt,
        dt_record: sim.dt_record,
        x0: InitialState::Value(x0),
        stop_on_exit: true,
        basin: basin.clone(),
    };

    // Paired but independent streams on the two sides.
    let ens_narrow = run_ensemble(&narrowed, &cfg_narrow, n, split_seed(master_seed, 0))?;
    let ens_base = run_ensemble(model, &cfg_base, n, split_seed(master_seed, 1))?;

    let mut narrow_times = ens_narrow.exit_times();
    // Map baseline exits onto the narrowed time axis.
    let mut base_times: Vec<f64> = ens_base.exit_times().iter().map(|t| t / k2).collect();
    if narrow_times.is_empty() && base_times.is_empty() {
        return Err(TimechangeError::Inconclusive);
    }
    narrow_times.sort_by(|a, b| a.partial_cmp(b).expect("finite exit times"));
    base_times.sort_by(|a, b| a.partial_cmp(b).expect("finite exit times"));

    let ks_distance = ks_two_sample_sub_cdf(&narrow_times, &base_times, n as f64);
    let threshold = KS_COEFF_1PCT * (2.0 / n as f64).sqrt();
    let mut tau_grid: Vec<f64> = narrow_times.iter().chain(&base_times).copied().collect();
    tau_grid.sort_by(|a, b| a.partial_cmp(b).expect("finite exit times"));
    tau_grid.dedup();

    Ok(RescaleReport { k, ks_distance, threshold, n_per_ensemble: n, tau_grid, pass: ks_distance < threshold })
}

/// The widening direction of the same theorem (`0 < k <= 1`): a widened
/// potential slows the exit clock by `1/k^2`.
#[allow(clippy::too_many_arguments)]
pub fn widen_is_slowdown(
    model: &PotentialModel,
    basin: &BasinSpec,
    x0: f64,
    k: f64,
    n: usize,
    horizon: f64,
    master_seed: u64,
    sim: &RescaleSim,
) -> Result<RescaleReport, TimechangeError> {
    if !(k > 0.0 && k <= 1.0) {
        return Err(TimechangeError::BadFactor(k));
    }
    verify_time_change(model, basin, x0, k, n, horizon, master_seed, sim)
}

/// Sup distance between two empirical sub-CDFs with a common denominator
/// `n` per side (non-exiting paths count in the denominator only).
fn ks_two_sample_sub_cdf(a: &[f64], b: &[f64], n: f64) -> f64 {
    let (mut ia, mut ib) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while ia < a.len() || ib < b.len() {
        let t = match (a.get(ia), b.get(ib)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => break,
        };
        while ia < a.len() && a[ia] <= t {
            ia += 1;
        }
        while ib < b.len() && b[ib] <= t {
            ib += 1;
        }
        d = d.max((ia as f64 / n - ib as f64 / n).abs());
    }
    d
}
