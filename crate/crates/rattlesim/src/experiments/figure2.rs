//! Frozen-habitat exit-time sweep: for each beta on a grid, simulate the
//! Allee model from its carrying capacity until it leaves `(beta*A, inf)`,
//! then summarize exit times and the variance / lag-1 autocorrelation over
//! the window preceding each exit. Plotted semi-log, these three panels are
//! the narrowing-well signature: exits accelerate while the indicators fall.

use super::{pre_exit_segment, summarize, Overrides, Summary};
use crate::config::RawConfig;
use crate::csvio::{fmt_f64, write_csv};
use crate::svg::{self, Series};
use crate::CliError;
use rattle::ews::{sample_autocorr, sample_variance};
use rattle::{run_ensemble, split_seed, BasinSpec, InitialState, PotentialModel, SimConfig};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone)]
pub struct Figure2Config {
    pub r: f64,
    pub a: f64,
    pub c: f64,
    pub noise: f64,
    pub beta_min: f64,
    pub beta_max: f64,
    pub beta_count: usize,
    pub n_per_beta: usize,
    pub horizon: f64,
    pub dt: f64,
    pub dt_record: f64,
    /// Pre-exit statistics window, time units before each exit.
    pub window: f64,
    pub lag: f64,
    pub seed: u64,
}

impl Default for Figure2Config {
    fn default() -> Self {
        Self {
            r: 1.0,
            a: 1.5,
            c: 2.5,
            noise: 0.22,
            beta_min: 0.2,
            beta_max: 1.2,
            beta_count: 10,
            n_per_beta: 500,
            horizon: 10_000.0,
            dt: 0.01,
            dt_record: 0.1,
            window: 10.0,
            lag: 1.0,
            seed: super::DEFAULT_SEED,
        }
    }
}

impl Figure2Config {
    pub fn from_config(raw: &RawConfig, ov: &Overrides) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        if let Some(v) = raw.f64("model", "r")? {
            cfg.r = v;
        }
        if let Some(v) = raw.f64("model", "A")? {
            cfg.a = v;
        }
        if let Some(v) = raw.f64("model", "C")? {
            cfg.c = v;
        }
        if let Some(v) = raw.f64("model", "noise")? {
            cfg.noise = v;
        }
        if let Some(v) = raw.f64("figure2", "beta_min")? {
            cfg.beta_min = v;
        }
        if let Some(v) = raw.f64("figure2", "beta_max")? {
            cfg.beta_max = v;
        }
        if let Some(v) = raw.usize("figure2", "beta_count")? {
            cfg.beta_count = v;
        }
        if let Some(v) = raw.usize("figure2", "n_per_beta")? {
            cfg.n_per_beta = v;
        }
        if let Some(v) = raw.f64("figure2", "horizon")? {
            cfg.horizon = v;
        }
        if let Some(v) = raw.f64("sim", "dt")? {
            cfg.dt = v;
        }
        if let Some(v) = raw.f64("sim", "dt_record")? {
            cfg.dt_record = v;
        }
        if let Some(v) = raw.f64("ews", "window")? {
            cfg.window = v;
        }
        if let Some(v) = raw.f64("ews", "lag")? {
            cfg.lag = v;
        }
        if let Some(v) = raw.u64("run", "seed")? {
            cfg.seed = v;
        }
        if let Some(seed) = ov.seed {
            cfg.seed = seed;
        }
        if let Some(n) = ov.n {
            cfg.n_per_beta = n;
        }
        Ok(cfg)
    }

    /// Inclusive, equally spaced beta grid.
    pub fn beta_grid(&self) -> Vec<f64> {
        if self.beta_count <= 1 {
            return vec![self.beta_min];
        }
        let step = (self.beta_max - self.beta_min) / (self.beta_count - 1) as f64;
        (0..self.beta_count).map(|i| self.beta_min + i as f64 * step).collect()
    }
}

/// One sweep point.
#[derive(Debug, Clone)]
pub struct Figure2Row {
    pub beta: f64,
    pub exit_time: Summary,
    pub pre_exit_variance: Summary,
    pub pre_exit_autocorr: Summary,
    pub n_exited: usize,
}

pub fn run_figure2(cfg: &Figure2Config) -> Result<Vec<Figure2Row>, CliError> {
    let lag_steps = (cfg.lag / cfg.dt_record).round() as usize;
    let mut rows = Vec::with_capacity(cfg.beta_count);
    for (i, beta) in cfg.beta_grid().into_iter().enumerate() {
        let model = PotentialModel::allee(cfg.r, cfg.a, cfg.c, beta, cfg.noise);
        let sim = SimConfig {
            t0: 0.0,
            horizon: cfg.horizon,
            dt: cfg.dt,
            dt_record: cfg.dt_record,
            x0: InitialState::Value(beta * cfg.c),
            stop_on_exit: true,
            basin: BasinSpec::above(beta * cfg.a),
        };
        let ens = run_ensemble(&model, &sim, cfg.n_per_beta, split_seed(cfg.seed, i as u64))?;

        let exits = ens.exit_times();
        let mut variances = Vec::new();
        let mut autocorrs = Vec::new();
        for path in &ens.paths {
            if path.exit.is_none() {
                continue;
            }
            if let Some(seg) = pre_exit_segment(path, cfg.window) {
                if let Some(v) = sample_variance(seg) {
                    variances.push(v);
                }
                if let Some(ac) = sample_autocorr(seg, lag_steps) {
                    autocorrs.push(ac);
                }
            }
        }
        let row = (|| {
            Some(Figure2Row {
                beta,
                exit_time: summarize(&exits)?,
                pre_exit_variance: summarize(&variances)?,
                pre_exit_autocorr: summarize(&autocorrs)?,
                n_exited: exits.len(),
            })
        })()
        .ok_or_else(|| {
            CliError::Inconclusive(format!(
                "no usable exits at beta = {beta}; raise the horizon or the noise"
            ))
        })?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_figure2(out_dir: &Path, rows: &[Figure2Row], svg: bool) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io { path: out_dir.display().to_string(), source: e })?;
    let mut written = Vec::new();
    let csv = out_dir.join("figure2.csv");
    write_csv(
        &csv,
        "beta,exit_mean,exit_p5,exit_p95,var_mean,var_p5,var_p95,ac_mean,ac_p5,ac_p95",
        rows.iter().map(|r| {
            [
                r.beta,
                r.exit_time.mean,
                r.exit_time.p5,
                r.exit_time.p95,
                r.pre_exit_variance.mean,
                r.pre_exit_variance.p5,
                r.pre_exit_variance.p95,
                r.pre_exit_autocorr.mean,
                r.pre_exit_autocorr.p5,
                r.pre_exit_autocorr.p95,
            ]
            .map(fmt_f64)
            .join(",")
        }),
    )?;
    written.push(csv);

    if svg {
        for (name, title, pick) in [
            ("figure2_exit.svg", "exit time vs beta", 0usize),
            ("figure2_variance.svg", "pre-exit variance vs beta", 1),
            ("figure2_autocorr.svg", "pre-exit lag-1 autocorrelation vs beta", 2),
        ] {
            let take = |r: &Figure2Row| match pick {
                0 => r.exit_time,
                1 => r.pre_exit_variance,
                _ => r.pre_exit_autocorr,
            };
            let series = vec![
                Series { label: "mean".into(), points: rows.iter().map(|r| (r.beta, take(r).mean)).collect() },
                Series { label: "p5".into(), points: rows.iter().map(|r| (r.beta, take(r).p5)).collect() },
                Series { label: "p95".into(), points: rows.iter().map(|r| (r.beta, take(r).p95)).collect() },
            ];
            // semi-log panels, matching how the sweep is meant to be read
            let content = svg::line_chart(title, "beta", "value (log scale)", true, &series);
            let path = out_dir.join(name);
            std::fs::write(&path, content)
                .map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
            written.push(path);
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_grid_is_inclusive_and_even() {
        let cfg = Figure2Config::default();
        let grid = cfg.beta_grid();
        assert_eq!(grid.len(), 10);
        assert!((grid[0] - 0.2).abs() < 1e-12);
        assert!((grid[9] - 1.2).abs() < 1e-12);
        let step = grid[1] - grid[0];
        for w in grid.windows(2) {
            assert!((w[1] - w[0] - step).abs() < 1e-12);
        }
    }
}
