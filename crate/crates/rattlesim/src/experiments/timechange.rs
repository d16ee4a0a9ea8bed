//! Space-contraction / time-change verification over a list of contraction
//! factors. The base model is a cubic well noisy enough to exit at desk
//! scale; each factor `k` compares a narrowed ensemble against the original
//! with its exit clock rescaled by `k^2`.

use super::Overrides;
use crate::config::RawConfig;
use crate::csvio::{fmt_f64, write_csv};
use crate::CliError;
use rattle::{
    split_seed, verify_time_change, BasinSpec, Boundary, PotentialModel, RescaleReport, RescaleSim,
};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone)]
pub struct TimechangeConfig {
    pub alpha: f64,
    pub beta: f64,
    pub noise: f64,
    pub basin_lower: Boundary,
    pub basin_upper: Boundary,
    pub x0: f64,
    pub k_list: Vec<f64>,
    pub n: usize,
    /// Comparison horizon in base-model time units; the narrowed side runs
    /// `effective_horizon / k^2` of its own (faster) clock.
    pub effective_horizon: f64,
    pub dt: f64,
    pub dt_record: f64,
    pub seed: u64,
}

impl Default for TimechangeConfig {
    fn default() -> Self {
        Self {
            alpha: 3.0,
            beta: 1.0,
            // barrier height 4 => mean exit ~ 40 time units at this noise
            noise: 1.5,
            basin_lower: Boundary::Constant(-1.0),
            basin_upper: Boundary::Unbounded,
            x0: 1.0,
            k_list: vec![0.5, 1.0, 2.0],
            n: 2000,
            effective_horizon: 400.0,
            dt: 0.005,
            dt_record: 0.05,
            seed: super::DEFAULT_SEED,
        }
    }
}

impl TimechangeConfig {
    pub fn from_config(raw: &RawConfig, ov: &Overrides) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        if let Some(v) = raw.f64("model", "alpha")? {
            cfg.alpha = v;
        }
        if let Some(v) = raw.f64("model", "beta")? {
            cfg.beta = v;
        }
        if let Some(v) = raw.f64("model", "noise")? {
            cfg.noise = v;
        }
        if let Some(b) = raw.boundary("timechange", "basin_lower")? {
            cfg.basin_lower = b;
        }
        if let Some(b) = raw.boundary("timechange", "basin_upper")? {
            cfg.basin_upper = b;
        }
        if let Some(v) = raw.f64("timechange", "x0")? {
            cfg.x0 = v;
        }
        if let Some(ks) = raw.f64_list("timechange", "k_list")? {
            cfg.k_list = ks;
        }
        if let Some(v) = raw.usize("timechange", "n")? {
            cfg.n = v;
        }
        if let Some(v) = raw.f64("timechange", "effective_horizon")? {
            cfg.effective_horizon = v;
        }
        if let Some(v) = raw.f64("sim", "dt")? {
            cfg.dt = v;
        }
        if let Some(v) = raw.f64("sim", "dt_record")? {
            cfg.dt_record = v;
        }
        if let Some(v) = raw.u64("run", "seed")? {
            cfg.seed = v;
        }
        if let Some(seed) = ov.seed {
            cfg.seed = seed;
        }
        if let Some(n) = ov.n {
            cfg.n = n;
        }
        Ok(cfg)
    }

    pub fn model(&self) -> PotentialModel {
        PotentialModel::cubic(self.alpha, self.beta, self.noise)
    }

    pub fn basin(&self) -> BasinSpec {
        BasinSpec::new(self.basin_lower.clone(), self.basin_upper.clone())
    }
}

/// One report per configured `k`, in order.
pub fn run_timechange(cfg: &TimechangeConfig) -> Result<Vec<RescaleReport>, CliError> {
    let model = cfg.model();
    let basin = cfg.basin();
    let sim = RescaleSim { dt: cfg.dt, dt_record: cfg.dt_record };
    cfg.k_list
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            verify_time_change(
                &model,
                &basin,
                cfg.x0,
                k,
                cfg.n,
                cfg.effective_horizon / (k * k),
                split_seed(cfg.seed, i as u64),
                &sim,
            )
            .map_err(CliError::from)
        })
        .collect()
}

pub fn all_pass(reports: &[RescaleReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

pub fn write_timechange(out_dir: &Path, reports: &[RescaleReport]) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io { path: out_dir.display().to_string(), source: e })?;
    let csv = out_dir.join("timechange.csv");
    write_csv(
        &csv,
        "k,ks_distance,threshold,pass",
        reports.iter().map(|r| {
            format!("{},{},{},{}", fmt_f64(r.k), fmt_f64(r.ks_distance), fmt_f64(r.threshold), r.pass)
        }),
    )?;
    Ok(vec![csv])
}
