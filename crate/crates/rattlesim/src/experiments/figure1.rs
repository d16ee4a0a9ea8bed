//! The habitat-shrink collapse experiment: an Allee population driven by
//! `beta(t) = 4/(1 + 0.01 t)` from its carrying capacity, with survivor-mean
//! early-warning statistics and a collapse-time histogram.

use super::Overrides;
use crate::config::RawConfig;
use crate::csvio::{fmt_f64, fmt_opt_f64, write_csv};
use crate::svg::{self, Series};
use crate::CliError;
use rattle::ews::{survivor_mean_series, StatKind};
use rattle::{
    run_ensemble, BasinSpec, Boundary, EnsembleResult, InitialState, ParamSchedule,
    PotentialModel, RollingStatSeries, SimConfig,
};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone)]
pub struct Figure1Config {
    pub r: f64,
    /// Allee-threshold scale A; collapse is the first crossing of `beta(t)*A`.
    pub a: f64,
    /// Carrying-capacity scale C; paths start at `beta(0)*C`.
    pub c: f64,
    pub noise: f64,
    pub beta: ParamSchedule,
    pub t0: f64,
    pub horizon: f64,
    pub dt: f64,
    pub dt_record: f64,
    pub x0: InitialState,
    pub window: f64,
    pub lag: f64,
    pub n: usize,
    pub seed: u64,
    /// How many paths land in paths.csv.
    pub paths_in_csv: usize,
    pub hist_bin_width: f64,
}

impl Default for Figure1Config {
    fn default() -> Self {
        Self {
            r: 1.0,
            a: 1.5,
            c: 2.5,
            noise: 0.22,
            beta: ParamSchedule::inverse_linear(4.0, 0.01),
            t0: 0.0,
            horizon: 1500.0,
            dt: 0.01,
            dt_record: 0.1,
            x0: InitialState::UpperStableEquilibrium,
            window: 10.0,
            lag: 1.0,
            n: 500,
            seed: super::DEFAULT_SEED,
            paths_in_csv: 5,
            hist_bin_width: 10.0,
        }
    }
}

impl Figure1Config {
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
        if let Some(s) = raw.schedule("model", "beta")? {
            cfg.beta = s;
        }
        if let Some(v) = raw.f64("sim", "t0")? {
            cfg.t0 = v;
        }
        if let Some(v) = raw.f64("sim", "horizon")? {
            cfg.horizon = v;
        }
        if let Some(v) = raw.f64("sim", "dt")? {
            cfg.dt = v;
        }
        if let Some(v) = raw.f64("sim", "dt_record")? {
            cfg.dt_record = v;
        }
        if let Some(x0) = parse_x0(raw, "sim", "x0")? {
            cfg.x0 = x0;
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
        if let Some(v) = raw.usize("run", "paths_in_csv")? {
            cfg.paths_in_csv = v;
        }
        if let Some(v) = raw.f64("run", "hist_bin_width")? {
            cfg.hist_bin_width = v;
        }
        cfg.apply(ov);
        Ok(cfg)
    }

    pub fn apply(&mut self, ov: &Overrides) {
        if let Some(seed) = ov.seed {
            self.seed = seed;
        }
        if let Some(n) = ov.n {
            self.n = n;
        }
    }

    pub fn model(&self) -> PotentialModel {
        PotentialModel::allee_scheduled(
            ParamSchedule::constant(self.r),
            ParamSchedule::constant(self.a),
            ParamSchedule::constant(self.c),
            self.beta,
            self.noise,
        )
    }

    pub fn sim(&self) -> SimConfig {
        SimConfig {
            t0: self.t0,
            horizon: self.horizon,
            dt: self.dt,
            dt_record: self.dt_record,
            x0: self.x0,
            // paths keep evolving after collapse, as in the sample-path panel
            stop_on_exit: false,
            basin: BasinSpec::new(
                Boundary::Scaled { schedule: self.beta, scale: self.a },
                Boundary::Unbounded,
            ),
        }
    }
}

pub(crate) fn parse_x0(raw: &RawConfig, section: &str, key: &str) -> Result<Option<InitialState>, CliError> {
    match raw.string(section, key) {
        None => Ok(None),
        Some(s) if s == "equilibrium" => Ok(Some(InitialState::UpperStableEquilibrium)),
        Some(s) => s
            .parse::<f64>()
            .map(|v| Some(InitialState::Value(v)))
            .map_err(|_| CliError::Config(format!("[{section}] {key}: expected a number or `equilibrium`, got `{s}`"))),
    }
}

#[derive(Debug, Clone)]
pub struct Figure1Output {
    pub ensemble: EnsembleResult,
    pub survivor_variance: RollingStatSeries,
    pub survivor_autocorr: RollingStatSeries,
    /// Paths still inside the basin at each recorded time.
    pub n_surviving: Vec<u32>,
    /// Collapse-time histogram bins `(start, end, count)`.
    pub histogram: Vec<(f64, f64, u64)>,
    /// The moving collapse threshold `beta(t) * A`.
    pub threshold: Vec<(f64, f64)>,
}

pub fn run_figure1(cfg: &Figure1Config) -> Result<Figure1Output, CliError> {
    let model = cfg.model();
    let sim = cfg.sim();
    let ensemble = run_ensemble(&model, &sim, cfg.n, cfg.seed)?;

    let times: Vec<f64> = (0..=sim.n_records()).map(|i| sim.t0 + i as f64 * sim.dt_record).collect();
    let (survivor_variance, survivor_autocorr) = if ensemble.is_empty() {
        (empty_series(&times, cfg.window, None), empty_series(&times, cfg.window, Some(cfg.lag)))
    } else {
        (
            survivor_mean_series(&ensemble, StatKind::Variance, cfg.window, cfg.lag)?,
            survivor_mean_series(&ensemble, StatKind::Autocorrelation, cfg.window, cfg.lag)?,
        )
    };

    let n_surviving = times
        .iter()
        .map(|&t| ensemble.paths.iter().filter(|p| p.survived_past(t)).count() as u32)
        .collect();
    let histogram = histogram_bins(&ensemble.exit_times(), cfg.hist_bin_width);
    let threshold = times.iter().map(|&t| (t, sim.basin.lower_at(t))).collect();

    Ok(Figure1Output { ensemble, survivor_variance, survivor_autocorr, n_surviving, histogram, threshold })
}

fn empty_series(times: &[f64], window: f64, lag: Option<f64>) -> RollingStatSeries {
    RollingStatSeries {
        times: times.to_vec(),
        values: vec![None; times.len()],
        window,
        lag,
        n_contributing: vec![0; times.len()],
    }
}

/// Contiguous bins of width `width`, aligned to multiples of `width`.
pub fn histogram_bins(values: &[f64], width: f64) -> Vec<(f64, f64, u64)> {
    if values.is_empty() {
        return Vec::new();
    }
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let first = (min / width).floor() as i64;
    let last = (max / width).floor() as i64;
    let mut bins: Vec<(f64, f64, u64)> =
        (first..=last).map(|i| (i as f64 * width, (i + 1) as f64 * width, 0)).collect();
    for &v in values {
        let idx = ((v / width).floor() as i64 - first) as usize;
        bins[idx].2 += 1;
    }
    bins
}

/// Emit paths.csv, survivor_stats.csv, collapse_hist.csv, threshold.csv
/// (and SVG renders when `svg` is set). Returns the files written.
pub fn write_figure1(
    out_dir: &Path,
    cfg: &Figure1Config,
    out: &Figure1Output,
    svg: bool,
) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io { path: out_dir.display().to_string(), source: e })?;
    let mut written = Vec::new();

    let paths_csv = out_dir.join("paths.csv");
    let shown = cfg.paths_in_csv.min(out.ensemble.len());
    write_csv(
        &paths_csv,
        "path_id,t,x,exited",
        out.ensemble.paths[..shown].iter().enumerate().flat_map(|(id, path)| {
            path.states.iter().enumerate().map(move |(i, &x)| {
                let t = path.time_at(i);
                let exited = path.exit.map_or(0, |e| u8::from(e.time <= t));
                format!("{id},{},{},{exited}", fmt_f64(t), fmt_f64(x))
            })
        }),
    )?;
    written.push(paths_csv);

    let stats_csv = out_dir.join("survivor_stats.csv");
    write_csv(
        &stats_csv,
        "t,n_surviving,mean_rolling_variance,mean_lag1_autocorr",
        out.survivor_variance.times.iter().enumerate().map(|(j, &t)| {
            format!(
                "{},{},{},{}",
                fmt_f64(t),
                out.n_surviving[j],
                fmt_opt_f64(out.survivor_variance.values[j]),
                fmt_opt_f64(out.survivor_autocorr.values[j]),
            )
        }),
    )?;
    written.push(stats_csv);

    let hist_csv = out_dir.join("collapse_hist.csv");
    write_csv(
        &hist_csv,
        "bin_start,bin_end,count",
        out.histogram.iter().map(|&(lo, hi, c)| format!("{},{},{c}", fmt_f64(lo), fmt_f64(hi))),
    )?;
    written.push(hist_csv);

    let threshold_csv = out_dir.join("threshold.csv");
    write_csv(
        &threshold_csv,
        "t,threshold",
        out.threshold.iter().map(|&(t, v)| format!("{},{}", fmt_f64(t), fmt_f64(v))),
    )?;
    written.push(threshold_csv);

    if svg {
        let mut series: Vec<Series> = out.ensemble.paths[..shown]
            .iter()
            .enumerate()
            .map(|(id, path)| Series {
                label: format!("path {id}"),
                points: path.states.iter().enumerate().map(|(i, &x)| (path.time_at(i), x)).collect(),
            })
            .collect();
        series.push(Series { label: "collapse threshold".into(), points: out.threshold.clone() });
        written.push(write_svg(out_dir, "paths.svg", svg::line_chart("sample paths", "t", "x", false, &series))?);

        let stat_series = vec![
            Series {
                label: "survivor-mean rolling variance".into(),
                points: present_points(&out.survivor_variance),
            },
            Series {
                label: "survivor-mean lag-1 autocorrelation".into(),
                points: present_points(&out.survivor_autocorr),
            },
        ];
        written.push(write_svg(
            out_dir,
            "survivor_stats.svg",
            svg::line_chart("survivor-mean early warning statistics", "t", "value", false, &stat_series),
        )?);
        written.push(write_svg(
            out_dir,
            "collapse_hist.svg",
            svg::histogram("collapse times", "t", &out.histogram),
        )?);
    }
    Ok(written)
}

fn present_points(series: &RollingStatSeries) -> Vec<(f64, f64)> {
    series.present_in(f64::NEG_INFINITY, f64::INFINITY)
}

fn write_svg(dir: &Path, name: &str, content: String) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    std::fs::write(&path, content).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_bins_are_contiguous_and_complete() {
        let bins = histogram_bins(&[5.0, 15.0, 17.0, 38.0], 10.0);
        assert_eq!(bins.len(), 4);
        assert_eq!(bins[0], (0.0, 10.0, 1));
        assert_eq!(bins[1], (10.0, 20.0, 2));
        assert_eq!(bins[2], (20.0, 30.0, 0));
        assert_eq!(bins[3], (30.0, 40.0, 1));
        assert!(histogram_bins(&[], 10.0).is_empty());
    }

    #[test]
    fn default_initial_state_is_beta0_times_c() {
        let cfg = Figure1Config::default();
        let x0 = cfg.sim().resolve_x0(&cfg.model()).unwrap();
        assert_eq!(x0, 10.0); // beta(0) * C = 4 * 2.5
    }
}
