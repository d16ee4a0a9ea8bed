//! Parallel vs sequential ensemble throughput.
//!
//! `run_ensemble` uses the rayon pool (default `parallel` feature);
//! `run_ensemble_sequential` is the single-thread fallback the feature
//! switch falls back to. Both produce bit-identical output, so the
//! comparison is pure scheduling overhead vs speedup.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rattle::{
    run_ensemble, run_ensemble_sequential, BasinSpec, Boundary, InitialState, ParamSchedule,
    PotentialModel, SimConfig,
};
use std::hint::black_box;

fn collapse_setup() -> (PotentialModel, SimConfig) {
    let beta = ParamSchedule::inverse_linear(4.0, 0.01);
    let model = PotentialModel::allee_scheduled(
        ParamSchedule::constant(1.0),
        ParamSchedule::constant(1.5),
        ParamSchedule::constant(2.5),
        beta,
        0.22,
    );
    let cfg = SimConfig {
        t0: 0.0,
        horizon: 100.0,
        dt: 0.01,
        dt_record: 0.1,
        x0: InitialState::UpperStableEquilibrium,
        stop_on_exit: false,
        basin: BasinSpec::new(Boundary::Scaled { schedule: beta, scale: 1.5 }, Boundary::Unbounded),
    };
    (model, cfg)
}

fn ou_setup() -> (PotentialModel, SimConfig) {
    let model = PotentialModel::ou(1.0, 1.0);
    let cfg = SimConfig {
        t0: 0.0,
        horizon: 50.0,
        dt: 0.01,
        dt_record: 0.1,
        x0: InitialState::Value(0.0),
        stop_on_exit: false,
        basin: BasinSpec::unbounded(),
    };
    (model, cfg)
}

fn bench_ensembles(c: &mut Criterion) {
    for (name, (model, cfg)) in [("allee_collapse", collapse_setup()), ("ou_relaxation", ou_setup())] {
        let mut group = c.benchmark_group(name);
        group.sample_size(10);
        for n in [64usize, 256] {
            group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
                b.iter(|| black_box(run_ensemble(&model, &cfg, n, 42).unwrap()))
            });
            group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
                b.iter(|| black_box(run_ensemble_sequential(&model, &cfg, n, 42).unwrap()))
            });
        }
        group.finish();
    }
}

criterion_group!(benches, bench_ensembles);
criterion_main!(benches);
