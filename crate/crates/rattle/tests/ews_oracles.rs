//! Oracle checks of the rolling statistics: stationary OU targets, a naive
//! recompute-per-window reference, survivor bookkeeping, and the i.i.d.
//! null of the trend classifier.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rattle::ews::{
    classify_trend, rolling_autocorrelation, rolling_variance, survivor_mean_series, StatKind,
    Trend,
};
use rattle::{
    simulate_path, BasinSpec, BoundarySide, EnsembleResult, ExitRecord, InitialState,
    PotentialModel, RollingStatSeries, SamplePath, SimConfig,
};

fn long_ou_path(seed: u64) -> SamplePath {
    let model = PotentialModel::ou(1.0, 1.0);
    let cfg = SimConfig {
        t0: 0.0,
        horizon: 3000.0,
        dt: 0.01,
        dt_record: 0.1,
        x0: InitialState::Value(0.0),
        stop_on_exit: false,
        basin: BasinSpec::unbounded(),
    };
    simulate_path(&model, &cfg, seed).unwrap()
}

fn mean_of_present(series: &RollingStatSeries, t_from: f64) -> f64 {
    let pts = series.present_in(t_from, f64::INFINITY);
    pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64
}

#[test]
fn rolling_variance_of_stationary_ou_averages_to_a2_over_2b() {
    // window 40 keeps the finite-window correlation bias under ~5%
    let path = long_ou_path(2024);
    let series = rolling_variance(&path, 40.0).unwrap();
    let avg = mean_of_present(&series, 100.0); // skip the relaxation transient
    assert!((avg - 0.5).abs() < 0.05, "time-average rolling variance {avg} vs 0.5 +- 10%");
}

#[test]
fn rolling_lag1_autocorrelation_of_stationary_ou_near_exp_minus_b() {
    // Window-mean subtraction biases the estimate down by ~ 4 tau_c / window,
    // so the window must dwarf the correlation time (1 here) to read off
    // rho(1) itself; 100 time units keeps the bias near -0.01.
    let path = long_ou_path(2025);
    let series = rolling_autocorrelation(&path, 100.0, 1.0).unwrap();
    let avg = mean_of_present(&series, 200.0);
    let want = (-1.0f64).exp();
    assert!((avg - want).abs() < 0.05, "mean lag-1 autocorrelation {avg} vs {want} +- 0.05");
}

/// Naive two-pass variance over the raw window, for the streaming check.
fn naive_window_variance(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)
}

/// Naive window-mean-subtracted lag correlation over the raw window.
fn naive_window_autocorr(xs: &[f64], l: usize) -> f64 {
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let (mut num, mut d1, mut d2) = (0.0, 0.0, 0.0);
    for i in 0..xs.len() - l {
        let a = xs[i] - mean;
        let b = xs[i + l] - mean;
        num += a * b;
        d1 += a * a;
        d2 += b * b;
    }
    num / (d1 * d2).sqrt()
}

#[test]
fn streaming_windows_match_naive_recompute_to_1e10() {
    let mut rng = ChaCha12Rng::seed_from_u64(55);
    let states: Vec<f64> = (0..1000).map(|_| 3.0 + rng.sample::<f64, _>(StandardNormal)).collect();
    let path = SamplePath { t0: 0.0, dt_record: 0.1, states: states.clone(), exit: None, seed: 0 };

    let var = rolling_variance(&path, 2.0).unwrap();
    let ac = rolling_autocorrelation(&path, 2.0, 0.5).unwrap();
    let w = 20; // 2.0 / 0.1
    let l = 5; // 0.5 / 0.1
    for j in 0..states.len() {
        if j < w {
            assert!(var.values[j].is_none());
            assert!(ac.values[j].is_none());
            continue;
        }
        let slice = &states[j - w..=j];
        let nv = naive_window_variance(slice);
        let na = naive_window_autocorr(slice, l);
        let dv = (var.values[j].unwrap() - nv).abs();
        let da = (ac.values[j].unwrap() - na).abs();
        assert!(dv <= 1e-10 * nv.max(1.0), "variance mismatch {dv} at {j}");
        assert!(da <= 1e-10, "autocorrelation mismatch {da} at {j}");
    }
}

fn toy_ensemble(paths: Vec<SamplePath>) -> EnsembleResult {
    let horizon = (paths[0].len() - 1) as f64 * paths[0].dt_record;
    EnsembleResult {
        paths,
        master_seed: 0,
        config_digest: String::new(),
        t0: 0.0,
        dt_record: 1.0,
        horizon,
    }
}

#[test]
fn survivor_mean_equals_single_path_series_for_identical_paths() {
    let states: Vec<f64> = (0..100).map(|i| ((i as f64) * 0.37).sin()).collect();
    let one = SamplePath { t0: 0.0, dt_record: 1.0, states, exit: None, seed: 0 };
    let ens = toy_ensemble(vec![one.clone(), one.clone(), one.clone()]);
    let mean = survivor_mean_series(&ens, StatKind::Variance, 10.0, 1.0).unwrap();
    let single = rolling_variance(&one, 10.0).unwrap();
    for j in 0..one.len() {
        match (mean.values[j], single.values[j]) {
            (Some(m), Some(s)) => {
                assert!((m - s).abs() < 1e-12);
                assert_eq!(mean.n_contributing[j], 3);
            }
            (None, None) => {}
            other => panic!("mismatch at {j}: {other:?}"),
        }
    }
}

#[test]
fn exited_paths_drop_out_of_the_survivor_average() {
    let flat = |v: f64| -> Vec<f64> { vec![v; 100] };
    let survivor = SamplePath { t0: 0.0, dt_record: 1.0, states: flat(1.0), exit: None, seed: 0 };
    let quitter = SamplePath {
        t0: 0.0,
        dt_record: 1.0,
        states: flat(5.0),
        exit: Some(ExitRecord { time: 50.0, boundary: BoundarySide::Lower, state_at_exit: 5.0 }),
        seed: 1,
    };
    let ens = toy_ensemble(vec![survivor, quitter]);
    let mean = survivor_mean_series(&ens, StatKind::Variance, 10.0, 1.0).unwrap();
    // constant paths: variance 0 everywhere once the window fills
    for j in 11..100 {
        assert_eq!(mean.values[j], Some(0.0));
        let t = j as f64;
        let expect = if t < 50.0 { 2 } else { 1 }; // strict: excluded from t = 50 on
        assert_eq!(mean.n_contributing[j], expect, "at t = {t}");
    }
}

#[test]
fn trend_classifier_stays_quiet_on_iid_noise() {
    // |tau| >= 0.3 at n = 200 sits ~6 null standard deviations out, so
    // essentially every i.i.d. series classifies as no-trend.
    let mut nones = 0;
    let runs = 100;
    for seed in 0..runs {
        let mut rng = ChaCha12Rng::seed_from_u64(900 + seed);
        let series = RollingStatSeries {
            times: (0..200).map(|i| i as f64).collect(),
            values: (0..200).map(|_| Some(rng.sample::<f64, _>(StandardNormal))).collect(),
            window: 1.0,
            lag: None,
            n_contributing: vec![1; 200],
        };
        let label = classify_trend(&series, 0.0, 199.0).unwrap();
        if label.label == Trend::None {
            nones += 1;
        }
    }
    assert!(nones >= 95, "expected >= 95/{runs} no-trend calls, got {nones}");
}

#[test]
fn permutation_null_of_tau_stays_far_below_threshold() {
    // Permutation oracle for the W4 threshold: the 95th percentile of |tau|
    // over random orderings of one fixed series should sit well under 0.3.
    let mut rng = ChaCha12Rng::seed_from_u64(4242);
    let base: Vec<f64> = (0..200).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let mut taus = Vec::new();
    let mut values = base;
    for _ in 0..400 {
        // Fisher-Yates shuffle
        for i in (1..values.len()).rev() {
            let j = rng.gen_range(0..=i);
            values.swap(i, j);
        }
        let series = RollingStatSeries {
            times: (0..200).map(|i| i as f64).collect(),
            values: values.iter().map(|v| Some(*v)).collect(),
            window: 1.0,
            lag: None,
            n_contributing: vec![1; 200],
        };
        taus.push(classify_trend(&series, 0.0, 199.0).unwrap().kendall_tau.abs());
    }
    taus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let p95 = taus[(taus.len() as f64 * 0.95) as usize];
    assert!(p95 < 0.3, "null 95th percentile of |tau| is {p95}");
}
