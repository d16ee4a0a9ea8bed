//! Ad-hoc ensemble runs for any configured model: raw paths plus per-path
//! rolling statistics.

use super::figure1::parse_x0;
use super::Overrides;
use crate::config::RawConfig;
use crate::csvio::{fmt_f64, fmt_opt_f64, write_csv};
use crate::svg::{self, Series};
use crate::CliError;
use rattle::ews::{rolling_autocorrelation, rolling_variance};
use rattle::{
    run_ensemble, BasinSpec, EnsembleResult, InitialState, ParamSchedule, PotentialModel,
    RollingStatSeries, SimConfig,
};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone)]
pub struct SimulateConfig {
    pub model: PotentialModel,
    pub sim: SimConfig,
    pub n: usize,
    pub seed: u64,
    pub window: f64,
    pub lag: f64,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        Self {
            model: PotentialModel::ou(1.0, 1.0),
            sim: SimConfig {
                t0: 0.0,
                horizon: 100.0,
                dt: 0.01,
                dt_record: 0.1,
                x0: InitialState::UpperStableEquilibrium,
                stop_on_exit: false,
                basin: BasinSpec::unbounded(),
            },
            n: 1,
            seed: super::DEFAULT_SEED,
            window: 10.0,
            lag: 1.0,
        }
    }
}

impl SimulateConfig {
    pub fn from_config(raw: &RawConfig, ov: &Overrides) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        cfg.model = model_from_config(raw)?.unwrap_or(cfg.model);
        if let Some(v) = raw.f64("sim", "t0")? {
            cfg.sim.t0 = v;
        }
        if let Some(v) = raw.f64("sim", "horizon")? {
            cfg.sim.horizon = v;
        }
        if let Some(v) = raw.f64("sim", "dt")? {
            cfg.sim.dt = v;
        }
        if let Some(v) = raw.f64("sim", "dt_record")? {
            cfg.sim.dt_record = v;
        }
        if let Some(x0) = parse_x0(raw, "sim", "x0")? {
            cfg.sim.x0 = x0;
        }
        if let Some(v) = raw.bool("sim", "stop_on_exit")? {
            cfg.sim.stop_on_exit = v;
        }
        if let Some(b) = raw.boundary("sim", "basin_lower")? {
            cfg.sim.basin.lower = b;
        }
        if let Some(b) = raw.boundary("sim", "basin_upper")? {
            cfg.sim.basin.upper = b;
        }
        if let Some(v) = raw.f64("ews", "window")? {
            cfg.window = v;
        }
        if let Some(v) = raw.f64("ews", "lag")? {
            cfg.lag = v;
        }
        if let Some(v) = raw.usize("run", "n")? {
            cfg.n = v;
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
}

/// Build a model from `[model]`: `kind = ou | brownian | cubic | allee`.
fn model_from_config(raw: &RawConfig) -> Result<Option<PotentialModel>, CliError> {
    let Some(kind) = raw.string("model", "kind") else {
        return Ok(None);
    };
    let noise = raw.f64("model", "noise")?.unwrap_or(1.0);
    let sched = |key: &str, default: f64| -> Result<ParamSchedule, CliError> {
        Ok(raw.schedule("model", key)?.unwrap_or(ParamSchedule::constant(default)))
    };
    let model = match kind.as_str() {
        "ou" => PotentialModel::ou_scheduled(sched("b", 1.0)?, noise),
        "brownian" => PotentialModel::brownian(noise),
        "cubic" => PotentialModel::cubic_scheduled(sched("alpha", 1.0)?, sched("beta", 1.0)?, noise),
        "allee" => PotentialModel::allee_scheduled(
            sched("r", 1.0)?,
            sched("A", 1.5)?,
            sched("C", 2.5)?,
            sched("beta", 4.0)?,
            noise,
        ),
        other => {
            return Err(CliError::Config(format!(
                "[model] kind: expected ou | brownian | cubic | allee, got `{other}`"
            )))
        }
    };
    Ok(Some(model))
}

#[derive(Debug, Clone)]
pub struct SimulateOutput {
    pub ensemble: EnsembleResult,
    pub variance: Vec<RollingStatSeries>,
    pub autocorr: Vec<RollingStatSeries>,
}

pub fn run_simulate(cfg: &SimulateConfig) -> Result<SimulateOutput, CliError> {
    let ensemble = run_ensemble(&cfg.model, &cfg.sim, cfg.n, cfg.seed)?;
    let mut variance = Vec::with_capacity(ensemble.len());
    let mut autocorr = Vec::with_capacity(ensemble.len());
    for path in &ensemble.paths {
        variance.push(rolling_variance(path, cfg.window)?);
        autocorr.push(rolling_autocorrelation(path, cfg.window, cfg.lag)?);
    }
    Ok(SimulateOutput { ensemble, variance, autocorr })
}

pub fn write_simulate(out_dir: &Path, out: &SimulateOutput, svg: bool) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io { path: out_dir.display().to_string(), source: e })?;
    let mut written = Vec::new();

    let paths_csv = out_dir.join("paths.csv");
    write_csv(
        &paths_csv,
        "path_id,t,x,exited",
        out.ensemble.paths.iter().enumerate().flat_map(|(id, path)| {
            path.states.iter().enumerate().map(move |(i, &x)| {
                let t = path.time_at(i);
                let exited = path.exit.map_or(0, |e| u8::from(e.time <= t));
                format!("{id},{},{},{exited}", fmt_f64(t), fmt_f64(x))
            })
        }),
    )?;
    written.push(paths_csv);

    let stats_csv = out_dir.join("stats.csv");
    write_csv(
        &stats_csv,
        "path_id,t,rolling_variance,lag_autocorr",
        out.variance.iter().zip(&out.autocorr).enumerate().flat_map(|(id, (var, ac))| {
            var.times.iter().enumerate().map(move |(j, &t)| {
                format!("{id},{},{},{}", fmt_f64(t), fmt_opt_f64(var.values[j]), fmt_opt_f64(ac.values[j]))
            })
        }),
    )?;
    written.push(stats_csv);

    if svg {
        let series: Vec<Series> = out
            .ensemble
            .paths
            .iter()
            .enumerate()
            .take(8)
            .map(|(id, path)| Series {
                label: format!("path {id}"),
                points: path.states.iter().enumerate().map(|(i, &x)| (path.time_at(i), x)).collect(),
            })
            .collect();
        let path = out_dir.join("paths.svg");
        std::fs::write(&path, svg::line_chart("sample paths", "t", "x", false, &series))
            .map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
        written.push(path);
    }
    Ok(written)
}
