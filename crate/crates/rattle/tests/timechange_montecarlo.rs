//! Monte Carlo verification of the contraction/time-change identity on a
//! cubic well noisy enough to produce exits at desk scale
//! (alpha = 3, beta = 1, a = 1.5: barrier 4, mean exit ~ 40 time units).

use rattle::stats::median;
use rattle::{
    narrow_model, run_ensemble, verify_time_change, widen_is_slowdown, BasinSpec, InitialState,
    PotentialModel, RescaleSim, SimConfig,
};

const EFFECTIVE_HORIZON: f64 = 400.0; // base-model time units, ~10 mean exits

fn cubic_model() -> PotentialModel {
    PotentialModel::cubic(3.0, 1.0, 1.5)
}

fn basin() -> BasinSpec {
    BasinSpec::above(-1.0)
}

#[test]
fn contraction_by_two_matches_time_change() {
    let k = 2.0;
    let report = verify_time_change(
        &cubic_model(),
        &basin(),
        1.0,
        k,
        600,
        EFFECTIVE_HORIZON / (k * k),
        0xA11CE,
        &RescaleSim::default(),
    )
    .unwrap();
    assert!(
        report.pass,
        "KS distance {} vs threshold {}",
        report.ks_distance, report.threshold
    );
    assert!(!report.tau_grid.is_empty());
}

#[test]
fn narrowing_dominates_the_unscaled_exit_cdf() {
    // For k > 1 the narrowed process exits sooner at every horizon:
    // p_hat_tau = p_{k^2 tau} >= p_tau. Check the empirical CDFs dominate
    // up to twice the binomial sampling error.
    let k = 2.0;
    let n = 600;
    let sim = RescaleSim::default();
    let narrowed = narrow_model(&cubic_model(), k).unwrap();
    let cfg_narrow = SimConfig {
        t0: 0.0,
        horizon: EFFECTIVE_HORIZON / (k * k),
        dt: sim.dt / (k * k),
        dt_record: sim.dt_record / (k * k),
        x0: InitialState::Value(1.0 / k),
        stop_on_exit: true,
        basin: basin().divided_by(k).unwrap(),
    };
    let cfg_base = SimConfig {
        t0: 0.0,
        horizon: EFFECTIVE_HORIZON / (k * k), // compare on the common tau range
        dt: sim.dt,
        dt_record: sim.dt_record,
        x0: InitialState::Value(1.0),
        stop_on_exit: true,
        basin: basin(),
    };
    let ens_n = run_ensemble(&narrowed, &cfg_narrow, n, 21).unwrap();
    let ens_b = run_ensemble(&cubic_model(), &cfg_base, n, 22).unwrap();
    let dist_n = rattle::exit_time_distribution(&ens_n);
    let dist_b = rattle::exit_time_distribution(&ens_b);
    let mut taus: Vec<f64> = dist_n.sorted_exit_times.iter().chain(&dist_b.sorted_exit_times).copied().collect();
    taus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for tau in taus {
        let (fn_, fb) = (dist_n.cdf(tau), dist_b.cdf(tau));
        let slack = 2.0 * ((fn_ * (1.0 - fn_) + fb * (1.0 - fb)) / n as f64).sqrt();
        assert!(fn_ >= fb - slack, "tau = {tau}: narrowed {fn_} vs base {fb} (slack {slack})");
    }
}

#[test]
fn widening_at_identity_factor_reduces_to_verify() {
    let sim = RescaleSim::default();
    let a = widen_is_slowdown(&cubic_model(), &basin(), 1.0, 1.0, 200, 80.0, 5, &sim).unwrap();
    let b = verify_time_change(&cubic_model(), &basin(), 1.0, 1.0, 200, 80.0, 5, &sim).unwrap();
    assert_eq!(a, b);
}

#[test]
fn identity_factor_passes_as_control() {
    let report = verify_time_change(
        &cubic_model(),
        &basin(),
        1.0,
        1.0,
        600,
        EFFECTIVE_HORIZON,
        0xC0,
        &RescaleSim::default(),
    )
    .unwrap();
    assert!(report.pass, "k = 1 control: {} vs {}", report.ks_distance, report.threshold);
}

#[test]
fn widening_slows_the_exit_clock_by_one_over_k_squared() {
    let k: f64 = 0.5;
    let report = widen_is_slowdown(
        &cubic_model(),
        &basin(),
        1.0,
        k,
        600,
        EFFECTIVE_HORIZON / (k * k),
        0xBEE,
        &RescaleSim::default(),
    )
    .unwrap();
    assert!(report.pass, "widening: {} vs {}", report.ks_distance, report.threshold);

    // median exit of the widened ensemble is ~ 1/k^2 = 4x the original's
    let widened = narrow_model(&cubic_model(), k).unwrap();
    let sim = RescaleSim::default();
    let cfg_widened = SimConfig {
        t0: 0.0,
        horizon: EFFECTIVE_HORIZON / (k * k),
        dt: sim.dt / (k * k),
        dt_record: sim.dt_record / (k * k),
        x0: InitialState::Value(1.0 / k),
        stop_on_exit: true,
        basin: basin().divided_by(k).unwrap(),
    };
    let cfg_base = SimConfig {
        t0: 0.0,
        horizon: EFFECTIVE_HORIZON,
        dt: sim.dt,
        dt_record: sim.dt_record,
        x0: InitialState::Value(1.0),
        stop_on_exit: true,
        basin: basin(),
    };
    let ens_w = run_ensemble(&widened, &cfg_widened, 600, 11).unwrap();
    let ens_b = run_ensemble(&cubic_model(), &cfg_base, 600, 12).unwrap();
    let med_w = median(&ens_w.exit_times()).unwrap();
    let med_b = median(&ens_b.exit_times()).unwrap();
    let ratio = med_w * k * k / med_b;
    assert!(
        (ratio - 1.0).abs() < 0.25,
        "median scaling: widened {med_w}, base {med_b}, k^2-adjusted ratio {ratio}"
    );
}
