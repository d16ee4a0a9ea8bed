//! Euler–Maruyama integration, exit detection, and reproducible ensembles.
//!
//! Paths are integrated with fixed step `dt` and recorded every `dt_record`
//! (an integer multiple of `dt`). Exits are detected on recorded samples
//! only; touching a boundary counts as an exit. Each ensemble member draws
//! its noise from an independent ChaCha stream whose seed comes from
//! [`split_seed`], so results are bit-identical however the work is
//! scheduled.

use crate::basin::BasinSpec;
use crate::model::{validate_model_over, PotentialModel};
use crate::sample::{BoundarySide, EnsembleResult, ExitRecord, ExitTimeDistribution, SamplePath};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EngineError {
    /// The integrator produced a non-finite state. `t` is the time of the
    /// failing step and `x` the last finite state before it.
    #[error("state became non-finite at t = {t} (last finite x = {x}){}", path_context(.path_index))]
    NumericalBlowup { t: f64, x: f64, path_index: Option<usize> },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

fn path_context(index: &Option<usize>) -> String {
    match index {
        Some(i) => format!(" [path {i}]"),
        None => String::new(),
    }
}

/// Initial state: explicit value, or resolved from the model's upper stable
/// equilibrium at `t0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    Value(f64),
    UpperStableEquilibrium,
}

/// Integration and recording plan for one simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub t0: f64,
    /// Simulated span; the path covers `[t0, t0 + horizon]`.
    pub horizon: f64,
    /// Integration step.
    pub dt: f64,
    /// Recording interval; must be a positive integer multiple of `dt`.
    pub dt_record: f64,
    pub x0: InitialState,
    /// Stop integrating once a recorded sample leaves the basin.
    pub stop_on_exit: bool,
    pub basin: BasinSpec,
}

impl SimConfig {
    /// Unbounded default plan: `dt = 0.01`, `dt_record = 0.1`.
    pub fn new(t0: f64, horizon: f64) -> Self {
        Self {
            t0,
            horizon,
            dt: 0.01,
            dt_record: 0.1,
            x0: InitialState::UpperStableEquilibrium,
            stop_on_exit: false,
            basin: BasinSpec::unbounded(),
        }
    }

    /// Recorded steps per recording interval.
    pub fn steps_per_record(&self) -> u64 {
        (self.dt_record / self.dt).round() as u64
    }

    /// Number of recording intervals in the horizon (path length minus one).
    pub fn n_records(&self) -> usize {
        (self.horizon / self.dt_record + 1e-9).floor() as usize
    }

    pub fn resolve_x0(&self, model: &PotentialModel) -> Result<f64, EngineError> {
        match self.x0 {
            InitialState::Value(x) => Ok(x),
            InitialState::UpperStableEquilibrium => model.upper_stable_equilibrium(self.t0).ok_or_else(|| {
                EngineError::InvalidConfig("model has no closed-form equilibrium; give x0 explicitly".into())
            }),
        }
    }

    fn check(&self, model: &PotentialModel) -> Result<(), EngineError> {
        let mut problems: Vec<String> = Vec::new();
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            problems.push(format!("dt must be positive (got {})", self.dt));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            problems.push(format!("horizon must be positive (got {})", self.horizon));
        }
        if !(self.dt <= self.dt_record && self.dt_record <= self.horizon) {
            problems.push(format!(
                "need dt <= dt_record <= horizon (dt = {}, dt_record = {}, horizon = {})",
                self.dt, self.dt_record, self.horizon
            ));
        }
        let ratio = self.dt_record / self.dt;
        if !(ratio.round() >= 1.0 && (ratio - ratio.round()).abs() <= 1e-6 * ratio.round()) {
            problems.push(format!("dt_record/dt must be a positive integer (got {ratio})"));
        }
        for v in validate_model_over(model, self.t0, self.t0 + self.horizon) {
            problems.push(v.to_string());
        }
        for v in self.basin.validate_over(self.t0, self.t0 + self.horizon) {
            problems.push(v.to_string());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(EngineError::InvalidConfig(problems.join("; ")))
        }
    }
}

/// Derive the seed for path `path_index` from an ensemble master seed.
///
/// SplitMix64 finalizer applied to `master_seed + (path_index + 1) * GAMMA`
/// with the Weyl constant `GAMMA = 0x9E3779B97F4A7C15`. The finalizer is a
/// bijection and the inputs are distinct for distinct indices, so seeds for
/// one master never collide.
pub fn split_seed(master_seed: u64, path_index: u64) -> u64 {
    const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut z = master_seed.wrapping_add(GAMMA.wrapping_mul(path_index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One Euler–Maruyama step: `x + b(x, t) dt + a sqrt(dt) z`.
pub fn em_step(x: f64, t: f64, model: &PotentialModel, dt: f64, z: f64) -> Result<f64, EngineError> {
    step_inner(x, t, model, dt, dt.sqrt(), z)
}

#[inline]
fn step_inner(x: f64, t: f64, model: &PotentialModel, dt: f64, sqrt_dt: f64, z: f64) -> Result<f64, EngineError> {
    let next = x + model.drift_at(x, t) * dt + model.noise_amplitude * sqrt_dt * z;
    if next.is_finite() {
        Ok(next)
    } else {
        Err(EngineError::NumericalBlowup { t, x, path_index: None })
    }
}

fn crossing(x: f64, t: f64, basin: &BasinSpec) -> Option<BoundarySide> {
    if x <= basin.lower_at(t) {
        Some(BoundarySide::Lower)
    } else if x >= basin.upper_at(t) {
        Some(BoundarySide::Upper)
    } else {
        None
    }
}

/// Integrate one path. A pure function of `(model, cfg, seed)`.
///
/// The path has `cfg.n_records() + 1` samples unless `stop_on_exit` truncates
/// it at the first recorded sample outside the basin (that sample is kept).
pub fn simulate_path(model: &PotentialModel, cfg: &SimConfig, seed: u64) -> Result<SamplePath, EngineError> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let m = cfg.steps_per_record();
    let n_records = cfg.n_records();
    let sqrt_dt = cfg.dt.sqrt();
    let mut x = cfg.resolve_x0(model)?;

    let mut states = Vec::with_capacity(n_records + 1);
    states.push(x);
    let mut exit: Option<ExitRecord> = None;

    if let Some(side) = crossing(x, cfg.t0, &cfg.basin) {
        exit = Some(ExitRecord { time: cfg.t0, boundary: side, state_at_exit: x });
    }
    if !(cfg.stop_on_exit && exit.is_some()) {
        'record: for i in 1..=n_records {
            for j in 0..m {
                let step_index = (i as u64 - 1) * m + j;
                let t = cfg.t0 + step_index as f64 * cfg.dt;
                let z: f64 = StandardNormal.sample(&mut rng);
                x = step_inner(x, t, model, cfg.dt, sqrt_dt, z)?;
            }
            let t_i = cfg.t0 + i as f64 * cfg.dt_record;
            states.push(x);
            if exit.is_none() {
                if let Some(side) = crossing(x, t_i, &cfg.basin) {
                    exit = Some(ExitRecord { time: t_i, boundary: side, state_at_exit: x });
                    if cfg.stop_on_exit {
                        break 'record;
                    }
                }
            }
        }
    }

    Ok(SamplePath { t0: cfg.t0, dt_record: cfg.dt_record, states, exit, seed })
}

/// First recorded sample at or beyond a basin boundary, if any.
pub fn detect_exit(states: &[f64], t0: f64, dt_record: f64, basin: &BasinSpec) -> Option<ExitRecord> {
    states.iter().enumerate().find_map(|(i, &x)| {
        let t = t0 + i as f64 * dt_record;
        crossing(x, t, basin).map(|side| ExitRecord { time: t, boundary: side, state_at_exit: x })
    })
}

fn assemble(
    results: Vec<Result<SamplePath, EngineError>>,
    cfg: &SimConfig,
    master_seed: u64,
    digest: String,
) -> Result<EnsembleResult, EngineError> {
    let mut paths = Vec::with_capacity(results.len());
    for (index, r) in results.into_iter().enumerate() {
        match r {
            Ok(p) => paths.push(p),
            Err(EngineError::NumericalBlowup { t, x, .. }) => {
                return Err(EngineError::NumericalBlowup { t, x, path_index: Some(index) })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(EnsembleResult {
        paths,
        master_seed,
        config_digest: digest,
        t0: cfg.t0,
        dt_record: cfg.dt_record,
        horizon: cfg.horizon,
    })
}

/// Run `n` independent paths. With the `parallel` feature the paths are
/// integrated on the rayon pool; output is bit-identical to the sequential
/// runner for any worker count.
pub fn run_ensemble(
    model: &PotentialModel,
    cfg: &SimConfig,
    n: usize,
    master_seed: u64,
) -> Result<EnsembleResult, EngineError> {
    cfg.check(model)?;
    let digest = config_digest(model, cfg, n);
    #[cfg(feature = "parallel")]
    let results: Vec<_> = (0..n)
        .into_par_iter()
        .map(|i| simulate_path(model, cfg, split_seed(master_seed, i as u64)))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = (0..n)
        .map(|i| simulate_path(model, cfg, split_seed(master_seed, i as u64)))
        .collect();
    assemble(results, cfg, master_seed, digest)
}

/// Sequential ensemble runner; always available, used as the baseline in
/// determinism checks and benchmarks.
pub fn run_ensemble_sequential(
    model: &PotentialModel,
    cfg: &SimConfig,
    n: usize,
    master_seed: u64,
) -> Result<EnsembleResult, EngineError> {
    cfg.check(model)?;
    let digest = config_digest(model, cfg, n);
    let results: Vec<_> = (0..n)
        .map(|i| simulate_path(model, cfg, split_seed(master_seed, i as u64)))
        .collect();
    assemble(results, cfg, master_seed, digest)
}

/// Empirical exit-time distribution of an ensemble.
pub fn exit_time_distribution(ens: &EnsembleResult) -> ExitTimeDistribution {
    ExitTimeDistribution::from_ensemble(ens)
}

/// FNV-1a digest of the canonical model/config description.
fn config_digest(model: &PotentialModel, cfg: &SimConfig, n: usize) -> String {
    let descriptor = format!("{model:?}|{cfg:?}|n={n}");
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in descriptor.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}
