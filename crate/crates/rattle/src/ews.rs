//! Early-warning statistics over recorded sample paths.
//!
//! Rolling statistics use the closed window `[t - window, t]`: at recording
//! index `j` the window holds the `W + 1` samples `j - W ..= j` with
//! `W = floor(window / dt_record)`, and a value exists once
//! `t >= t0 + window`. Earlier times are explicitly missing — never zero.
//!
//! The windowed autocorrelation at lag `s` subtracts the window mean from
//! every sample, then correlates the pairs `(x_i, x_{i+L})`,
//! `L = s / dt_record`. A window whose marginal variance vanishes yields a
//! missing value.
//!
//! Survivor averaging (`survivor_mean_series`) includes a path at time `t`
//! only while its exit time is strictly later than `t`, and sums in fixed
//! path order so the result does not depend on evaluation order.

use crate::sample::{EnsembleResult, SamplePath};
use crate::stats::normal_two_sided_p;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

/// Relative variance floor below which a window counts as constant.
const ZERO_VARIANCE_REL: f64 = 1e-24;

/// Kendall-tau magnitude from which a trend is called (see
/// [`classify_trend`]); chosen so an i.i.d. null with 100+ points is
/// rejected far beyond the 5% level.
pub const TREND_TAU_THRESHOLD: f64 = 0.3;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EwsError {
    #[error("window must span at least {needed} time units (got {got})")]
    WindowTooShort { needed: f64, got: f64 },
    #[error("lag must be a positive integer multiple of dt_record = {dt_record} (got {lag})")]
    BadLag { lag: f64, dt_record: f64 },
    #[error("need at least {needed} non-missing values, found {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("ensemble is empty")]
    EmptyEnsemble,
}

/// A rolling statistic sampled on the recording grid, with explicit gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct RollingStatSeries {
    pub times: Vec<f64>,
    /// `None` where the window lacks data or is degenerate.
    pub values: Vec<Option<f64>>,
    pub window: f64,
    /// Lag in time units; `None` for variance series.
    pub lag: Option<f64>,
    /// How many paths were averaged at each time (1/0 for per-path series).
    pub n_contributing: Vec<u32>,
}

impl RollingStatSeries {
    /// Value at the recorded time nearest to `t` (within half a step).
    pub fn value_at_time(&self, t: f64) -> Option<f64> {
        if self.times.is_empty() {
            return None;
        }
        let dt = if self.times.len() > 1 { self.times[1] - self.times[0] } else { f64::INFINITY };
        let i = ((t - self.times[0]) / dt).round();
        if i < 0.0 || i as usize >= self.times.len() {
            return None;
        }
        let i = i as usize;
        if (self.times[i] - t).abs() > dt * 0.5 {
            return None;
        }
        self.values[i]
    }

    /// (time, value) pairs of the non-missing entries in `[t_start, t_end]`.
    pub fn present_in(&self, t_start: f64, t_end: f64) -> Vec<(f64, f64)> {
        self.times
            .iter()
            .zip(&self.values)
            .filter(|(t, _)| **t >= t_start - 1e-12 && **t <= t_end + 1e-12)
            .filter_map(|(t, v)| v.map(|v| (*t, v)))
            .collect()
    }
}

/// Which per-path statistic to aggregate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatKind {
    Variance,
    Autocorrelation,
}

/// Direction of a monotone trend, or the absence of one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Rising,
    Falling,
    None,
}

/// Kendall-tau trend call over a time window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrendLabel {
    pub label: Trend,
    pub kendall_tau: f64,
    /// Two-sided normal-approximation p-value for tau; a ranking aid, not an
    /// exact test.
    pub p_value_proxy: f64,
}

struct WindowPlan {
    /// Samples reaching back from `j`: window covers `j - back ..= j`.
    back: usize,
    /// First eligible recording index (`t >= t0 + window`).
    first: usize,
}

fn plan_window(window: f64, dt_record: f64) -> WindowPlan {
    let ratio = window / dt_record;
    WindowPlan { back: (ratio + 1e-9).floor() as usize, first: (ratio - 1e-9).ceil() as usize }
}

/// Prefix sums of the globally centered series and its squares. Centering
/// on the path mean keeps the windowed sums well-conditioned without
/// changing any variance or correlation.
struct Prefixes {
    y: Vec<f64>,
    p1: Vec<f64>,
    p2: Vec<f64>,
}

fn prefixes(states: &[f64]) -> Prefixes {
    let mean = states.iter().sum::<f64>() / states.len() as f64;
    let y: Vec<f64> = states.iter().map(|x| x - mean).collect();
    let mut p1 = Vec::with_capacity(y.len() + 1);
    let mut p2 = Vec::with_capacity(y.len() + 1);
    p1.push(0.0);
    p2.push(0.0);
    let (mut s1, mut s2) = (0.0, 0.0);
    for &v in &y {
        s1 += v;
        s2 += v * v;
        p1.push(s1);
        p2.push(s2);
    }
    Prefixes { y, p1, p2 }
}

/// Unbiased rolling variance of one path.
pub fn rolling_variance(path: &SamplePath, window: f64) -> Result<RollingStatSeries, EwsError> {
    if window < 2.0 * path.dt_record {
        return Err(EwsError::WindowTooShort { needed: 2.0 * path.dt_record, got: window });
    }
    let plan = plan_window(window, path.dt_record);
    let pre = prefixes(&path.states);
    let n = path.states.len();
    let mut values = vec![None; n];
    for (j, slot) in values.iter_mut().enumerate().skip(plan.first.max(plan.back)) {
        let lo = j - plan.back;
        let nw = (plan.back + 1) as f64;
        let sum = pre.p1[j + 1] - pre.p1[lo];
        let sumsq = pre.p2[j + 1] - pre.p2[lo];
        let mean = sum / nw;
        let var = (sumsq - nw * mean * mean) / (nw - 1.0);
        *slot = Some(var.max(0.0));
    }
    Ok(series_from(path, window, None, values))
}

/// Rolling window-mean-subtracted lag autocorrelation of one path.
pub fn rolling_autocorrelation(path: &SamplePath, window: f64, lag: f64) -> Result<RollingStatSeries, EwsError> {
    let lag_steps = lag_in_steps(lag, path.dt_record)?;
    if window < 2.0 * lag {
        return Err(EwsError::WindowTooShort { needed: 2.0 * lag, got: window });
    }
    let plan = plan_window(window, path.dt_record);
    let pre = prefixes(&path.states);
    let n = path.states.len();
    let l = lag_steps;

    // cross[i] = sum over m < i of y_m * y_{m+l}
    let mut cross = Vec::with_capacity(n.saturating_sub(l) + 1);
    cross.push(0.0);
    let mut acc = 0.0;
    for m in 0..n.saturating_sub(l) {
        acc += pre.y[m] * pre.y[m + l];
        cross.push(acc);
    }

    let mut values = vec![None; n];
    for (j, slot) in values.iter_mut().enumerate().skip(plan.first.max(plan.back)) {
        let lo = j - plan.back;
        let pairs = plan.back + 1 - l; // window >= 2*lag keeps this >= 2
        let hi_pair = j - l;
        let nw = (plan.back + 1) as f64;
        let np = pairs as f64;
        let mu = (pre.p1[j + 1] - pre.p1[lo]) / nw;

        let s1a = pre.p1[hi_pair + 1] - pre.p1[lo];
        let s2a = pre.p2[hi_pair + 1] - pre.p2[lo];
        let s1b = pre.p1[j + 1] - pre.p1[lo + l];
        let s2b = pre.p2[j + 1] - pre.p2[lo + l];
        let cr = cross[hi_pair + 1] - cross[lo];

        let num = cr - mu * (s1a + s1b) + np * mu * mu;
        let d1 = s2a - 2.0 * mu * s1a + np * mu * mu;
        let d2 = s2b - 2.0 * mu * s1b + np * mu * mu;
        let floor1 = ZERO_VARIANCE_REL * s2a.max(np * mu * mu);
        let floor2 = ZERO_VARIANCE_REL * s2b.max(np * mu * mu);
        if d1 <= floor1 || d2 <= floor2 {
            continue; // constant leg: correlation undefined
        }
        *slot = Some((num / (d1 * d2).sqrt()).clamp(-1.0, 1.0));
    }
    Ok(series_from(path, window, Some(lag), values))
}

fn lag_in_steps(lag: f64, dt_record: f64) -> Result<usize, EwsError> {
    let ratio = lag / dt_record;
    let steps = ratio.round();
    if steps >= 1.0 && (ratio - steps).abs() <= 1e-6 * steps {
        Ok(steps as usize)
    } else {
        Err(EwsError::BadLag { lag, dt_record })
    }
}

fn series_from(path: &SamplePath, window: f64, lag: Option<f64>, values: Vec<Option<f64>>) -> RollingStatSeries {
    let times = (0..path.states.len()).map(|i| path.time_at(i)).collect();
    let n_contributing = values.iter().map(|v| u32::from(v.is_some())).collect();
    RollingStatSeries { times, values, window, lag, n_contributing }
}

/// Mean of a per-path rolling statistic over the paths still inside the
/// basin at each time.
///
/// A path contributes at time `t` iff its exit time (if any) is strictly
/// later than `t` and its own value at `t` is present. Entries with no
/// contributors are missing.
pub fn survivor_mean_series(
    ens: &EnsembleResult,
    stat: StatKind,
    window: f64,
    lag: f64,
) -> Result<RollingStatSeries, EwsError> {
    if ens.is_empty() {
        return Err(EwsError::EmptyEnsemble);
    }
    let n_times = (ens.horizon / ens.dt_record + 1e-9).floor() as usize + 1;
    let times: Vec<f64> = (0..n_times).map(|i| ens.t0 + i as f64 * ens.dt_record).collect();
    let mut sums = vec![0.0f64; n_times];
    let mut counts = vec![0u32; n_times];

    // Per-path series are computed in bounded chunks and folded in fixed
    // path order, so memory stays O(chunk) and the float sums are
    // bit-identical for any worker count.
    const CHUNK: usize = 256;
    for chunk in ens.paths.chunks(CHUNK) {
        let series = per_path_series(chunk, stat, window, lag)?;
        for (path, series) in chunk.iter().zip(&series) {
            for (j, (&t, value)) in times.iter().zip(&series.values).enumerate() {
                if let Some(v) = value {
                    if path.survived_past(t) {
                        sums[j] += *v;
                        counts[j] += 1;
                    }
                }
            }
        }
    }

    let values = sums
        .iter()
        .zip(&counts)
        .map(|(s, &c)| (c > 0).then(|| s / c as f64))
        .collect();

    Ok(RollingStatSeries {
        times,
        values,
        window,
        lag: (stat == StatKind::Autocorrelation).then_some(lag),
        n_contributing: counts,
    })
}

/// Cross-path variance of the surviving states at each recorded time: the
/// ensemble variance `Var(X_t)`, not a time-windowed estimate. This is the
/// right probe when the process decorrelates slower than any usable window
/// (a flattening well stretches the correlation time without bound, so a
/// fixed window sees only high-frequency diffusion). Missing with fewer
/// than 2 survivors.
pub fn survivor_ensemble_variance(ens: &EnsembleResult) -> Result<RollingStatSeries, EwsError> {
    if ens.is_empty() {
        return Err(EwsError::EmptyEnsemble);
    }
    let n_times = (ens.horizon / ens.dt_record + 1e-9).floor() as usize + 1;
    let times: Vec<f64> = (0..n_times).map(|i| ens.t0 + i as f64 * ens.dt_record).collect();
    let mut values = vec![None; n_times];
    let mut n_contributing = vec![0u32; n_times];
    let mut states = Vec::with_capacity(ens.len());
    for (j, (&t, slot)) in times.iter().zip(values.iter_mut()).enumerate() {
        states.clear();
        for path in &ens.paths {
            if path.survived_past(t) {
                if let Some(&x) = path.states.get(j) {
                    states.push(x);
                }
            }
        }
        if states.len() >= 2 {
            let n = states.len() as f64;
            let mean = states.iter().sum::<f64>() / n;
            let ss = states.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
            *slot = Some(ss / (n - 1.0));
            n_contributing[j] = states.len() as u32;
        }
    }
    Ok(RollingStatSeries { times, values, window: 0.0, lag: None, n_contributing })
}

fn per_path_series(
    paths: &[SamplePath],
    stat: StatKind,
    window: f64,
    lag: f64,
) -> Result<Vec<RollingStatSeries>, EwsError> {
    let one = |path: &SamplePath| match stat {
        StatKind::Variance => rolling_variance(path, window),
        StatKind::Autocorrelation => rolling_autocorrelation(path, window, lag),
    };
    #[cfg(feature = "parallel")]
    let result: Result<Vec<_>, _> = paths.par_iter().map(one).collect();
    #[cfg(not(feature = "parallel"))]
    let result: Result<Vec<_>, _> = paths.iter().map(one).collect();
    result
}

/// Kendall-tau trend call on the non-missing values in `[t_start, t_end]`,
/// using the default threshold [`TREND_TAU_THRESHOLD`].
pub fn classify_trend(series: &RollingStatSeries, t_start: f64, t_end: f64) -> Result<TrendLabel, EwsError> {
    classify_trend_with_threshold(series, t_start, t_end, TREND_TAU_THRESHOLD)
}

/// As [`classify_trend`] with an explicit `|tau|` decision threshold.
pub fn classify_trend_with_threshold(
    series: &RollingStatSeries,
    t_start: f64,
    t_end: f64,
    tau_threshold: f64,
) -> Result<TrendLabel, EwsError> {
    let pts = series.present_in(t_start, t_end);
    if pts.len() < 10 {
        return Err(EwsError::InsufficientData { needed: 10, got: pts.len() });
    }
    let values: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let (tau, z) = kendall_tau_against_time(&values);
    let label = if tau >= tau_threshold {
        Trend::Rising
    } else if tau <= -tau_threshold {
        Trend::Falling
    } else {
        Trend::None
    };
    Ok(TrendLabel { label, kendall_tau: tau, p_value_proxy: normal_two_sided_p(z) })
}

/// Kendall tau-b of a series against its (strictly increasing) time index,
/// plus the normal-approximation z statistic of `C - D`.
fn kendall_tau_against_time(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    let (mut concordant, mut discordant, mut ties) = (0u64, 0u64, 0u64);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = values[j] - values[i];
            if d > 0.0 {
                concordant += 1;
            } else if d < 0.0 {
                discordant += 1;
            } else {
                ties += 1;
            }
        }
    }
    let s = concordant as f64 - discordant as f64;
    let n0 = (n * (n - 1) / 2) as f64;
    let denom = (n0 * (n0 - ties as f64)).sqrt();
    let tau = if denom == 0.0 { 0.0 } else { s / denom };
    let nf = n as f64;
    let var_s = nf * (nf - 1.0) * (2.0 * nf + 5.0) / 18.0;
    let z = if var_s > 0.0 { s / var_s.sqrt() } else { 0.0 };
    (tau, z)
}

/// Unbiased variance of a plain segment (used for pre-exit windows);
/// `None` below 2 samples.
pub fn sample_variance(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let ss = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
    Some(ss / (n - 1.0))
}

/// Mean-subtracted lag autocorrelation of a plain segment, same estimator
/// as the rolling version; `None` with fewer than 2 pairs or a constant leg.
pub fn sample_autocorr(xs: &[f64], lag_steps: usize) -> Option<f64> {
    if lag_steps == 0 || xs.len() < lag_steps + 2 {
        return None;
    }
    let n = xs.len();
    let mean = xs.iter().sum::<f64>() / n as f64;
    let np = n - lag_steps;
    let (mut num, mut d1, mut d2) = (0.0, 0.0, 0.0);
    for i in 0..np {
        let a = xs[i] - mean;
        let b = xs[i + lag_steps] - mean;
        num += a * b;
        d1 += a * a;
        d2 += b * b;
    }
    let scale = xs.iter().map(|x| x * x).fold(0.0f64, f64::max).max(mean * mean) * np as f64;
    if d1 <= ZERO_VARIANCE_REL * scale || d2 <= ZERO_VARIANCE_REL * scale {
        return None;
    }
    Some((num / (d1 * d2).sqrt()).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn path(states: Vec<f64>, dt_record: f64) -> SamplePath {
        SamplePath { t0: 0.0, dt_record, states, exit: None, seed: 0 }
    }

    #[test]
    fn variance_of_constant_path_is_zero_where_defined() {
        let p = path(vec![5.0; 40], 0.1);
        let s = rolling_variance(&p, 1.0).unwrap();
        assert!(s.values[..10].iter().all(Option::is_none));
        assert!(s.values[10..].iter().all(|v| *v == Some(0.0)));
    }

    #[test]
    fn variance_spanning_entire_alternating_path() {
        // window = 3 recording steps puts all four samples in the window at j = 3
        let p = path(vec![1.0, -1.0, 1.0, -1.0], 1.0);
        let s = rolling_variance(&p, 3.0).unwrap();
        assert_eq!(s.values[..3], [None, None, None]);
        assert_relative_eq!(s.values[3].unwrap(), 4.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn window_shorter_than_two_steps_is_rejected() {
        let p = path(vec![0.0; 10], 0.1);
        assert!(matches!(rolling_variance(&p, 0.1), Err(EwsError::WindowTooShort { .. })));
    }

    #[test]
    fn alternating_series_has_perfect_lag_correlations() {
        // window of 3 steps -> 4 samples, zero window mean
        let xs: Vec<f64> = (0..40).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let p = path(xs, 1.0);
        let s = rolling_autocorrelation(&p, 3.0, 1.0).unwrap();
        for v in s.values.iter().flatten() {
            assert_relative_eq!(*v, -1.0, max_relative = 1e-12);
        }
        // lag 2 with a 5-step (6-sample) window: positive perfect correlation
        let xs: Vec<f64> = (0..40).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let p = path(xs, 1.0);
        let s = rolling_autocorrelation(&p, 5.0, 2.0).unwrap();
        for v in s.values.iter().flatten() {
            assert_relative_eq!(*v, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn constant_window_yields_missing_autocorrelation() {
        let p = path(vec![2.5; 30], 1.0);
        let s = rolling_autocorrelation(&p, 4.0, 1.0).unwrap();
        assert!(s.values.iter().all(Option::is_none));
    }

    #[test]
    fn lag_must_be_integer_multiple_of_recording_step() {
        let p = path(vec![0.0, 1.0, 0.0, 1.0, 0.0, 1.0], 0.1);
        assert!(matches!(rolling_autocorrelation(&p, 0.4, 0.15), Err(EwsError::BadLag { .. })));
    }

    #[test]
    fn shift_and_scale_behavior() {
        // fixed pseudo-random data (LCG), no rand dependency needed here
        let mut x = 1u64;
        let xs: Vec<f64> = (0..300)
            .map(|_| {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect();
        let base = path(xs.clone(), 0.1);
        let shifted = path(xs.iter().map(|v| v + 37.25).collect(), 0.1);
        let scaled = path(xs.iter().map(|v| v * -3.0).collect(), 0.1);

        let (vb, vs, vc) = (
            rolling_variance(&base, 2.0).unwrap(),
            rolling_variance(&shifted, 2.0).unwrap(),
            rolling_variance(&scaled, 2.0).unwrap(),
        );
        let (ab, ash, asc) = (
            rolling_autocorrelation(&base, 2.0, 0.5).unwrap(),
            rolling_autocorrelation(&shifted, 2.0, 0.5).unwrap(),
            rolling_autocorrelation(&scaled, 2.0, 0.5).unwrap(),
        );
        for j in 0..300 {
            match (vb.values[j], vs.values[j], vc.values[j]) {
                (Some(b), Some(s), Some(c)) => {
                    assert_relative_eq!(b, s, max_relative = 1e-12, epsilon = 1e-12);
                    assert_relative_eq!(9.0 * b, c, max_relative = 1e-12, epsilon = 1e-12);
                }
                (None, None, None) => {}
                other => panic!("missingness mismatch at {j}: {other:?}"),
            }
            match (ab.values[j], ash.values[j], asc.values[j]) {
                (Some(b), Some(s), Some(c)) => {
                    assert_relative_eq!(b, s, max_relative = 1e-9, epsilon = 1e-12);
                    assert_relative_eq!(b, c, max_relative = 1e-9, epsilon = 1e-12);
                }
                (None, None, None) => {}
                other => panic!("missingness mismatch at {j}: {other:?}"),
            }
        }
    }

    #[test]
    fn trend_classification_on_monotone_series() {
        let times: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let up = RollingStatSeries {
            times: times.clone(),
            values: times.iter().map(|t| Some(*t * 0.1)).collect(),
            window: 1.0,
            lag: None,
            n_contributing: vec![1; 50],
        };
        let label = classify_trend(&up, 0.0, 49.0).unwrap();
        assert_eq!(label.label, Trend::Rising);
        assert_eq!(label.kendall_tau, 1.0);
        assert!(label.p_value_proxy < 1e-6);

        let down = RollingStatSeries {
            values: times.iter().map(|t| Some(-*t)).collect(),
            ..up.clone()
        };
        let label = classify_trend(&down, 0.0, 49.0).unwrap();
        assert_eq!(label.label, Trend::Falling);
        assert_eq!(label.kendall_tau, -1.0);
    }

    #[test]
    fn trend_needs_ten_points() {
        let s = RollingStatSeries {
            times: (0..9).map(|i| i as f64).collect(),
            values: (0..9).map(|i| Some(i as f64)).collect(),
            window: 1.0,
            lag: None,
            n_contributing: vec![1; 9],
        };
        assert!(matches!(classify_trend(&s, 0.0, 10.0), Err(EwsError::InsufficientData { .. })));
    }

    #[test]
    fn ensemble_variance_across_survivors() {
        use crate::sample::{BoundarySide, EnsembleResult, ExitRecord};
        let mk = |states: Vec<f64>, exit_t: Option<f64>| SamplePath {
            t0: 0.0,
            dt_record: 1.0,
            states,
            exit: exit_t.map(|time| ExitRecord {
                time,
                boundary: BoundarySide::Lower,
                state_at_exit: 0.0,
            }),
            seed: 0,
        };
        let ens = EnsembleResult {
            paths: vec![
                mk(vec![0.0, 0.0, 0.0], None),
                mk(vec![2.0, 4.0, 6.0], None),
                mk(vec![1.0, 2.0], Some(1.0)), // exits at t = 1
            ],
            master_seed: 0,
            config_digest: String::new(),
            t0: 0.0,
            dt_record: 1.0,
            horizon: 2.0,
        };
        let series = survivor_ensemble_variance(&ens).unwrap();
        // t = 0: survivors {0, 2, 1} -> var 1; t = 1: {0, 4} -> var 8
        assert_eq!(series.values[0], Some(1.0));
        assert_eq!(series.n_contributing[0], 3);
        assert_eq!(series.values[1], Some(8.0));
        assert_eq!(series.n_contributing[1], 2);
        assert_eq!(series.values[2], Some(18.0));
    }

    #[test]
    fn segment_estimators_match_rolling_on_full_window() {
        let xs = [1.0, -1.0, 1.0, -1.0];
        assert_relative_eq!(sample_variance(&xs).unwrap(), 4.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(sample_autocorr(&xs, 1).unwrap(), -1.0, max_relative = 1e-12);
        assert_eq!(sample_variance(&[1.0]), None);
        assert_eq!(sample_autocorr(&[1.0, 1.0, 1.0], 1), None); // constant
    }
}
