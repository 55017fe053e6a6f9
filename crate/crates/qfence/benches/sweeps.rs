//! Parallel-vs-sequential timings for the verification sweeps. Each sweep
//! fans its parameter grid out over rayon when `parallel` is on; these
//! benchmarks measure what that buys at moderate sizes.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qfence::verify;

fn mode_name(parallel: bool) -> &'static str {
    if parallel {
        "parallel"
    } else {
        "sequential"
    }
}

fn bench_oracle_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_sweep_size_11");
    group.sample_size(10);
    for parallel in [false, true] {
        group.bench_with_input(
            BenchmarkId::from_parameter(mode_name(parallel)),
            &parallel,
            |b, &p| b.iter(|| verify::oracle_sweep(11, p).expect("sweep runs")),
        );
    }
    group.finish();
}

fn bench_trace_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("trace_theorem_sweep_rmax_40");
    group.sample_size(10);
    for parallel in [false, true] {
        group.bench_with_input(
            BenchmarkId::from_parameter(mode_name(parallel)),
            &parallel,
            |b, &p| b.iter(|| verify::trace_theorem_sweep(40, p).expect("sweep runs")),
        );
    }
    group.finish();
}

fn bench_unimodal_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("unimodal_sweep_size_12");
    group.sample_size(10);
    for parallel in [false, true] {
        group.bench_with_input(
            BenchmarkId::from_parameter(mode_name(parallel)),
            &parallel,
            |b, &p| b.iter(|| verify::unimodal_sweep(12, p).expect("sweep runs")),
        );
    }
    group.finish();
}

fn bench_gen_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("gen_suite_100_posets");
    group.sample_size(10);
    for parallel in [false, true] {
        group.bench_with_input(
            BenchmarkId::from_parameter(mode_name(parallel)),
            &parallel,
            |b, &p| b.iter(|| verify::gen_suite(2026, 100, 8, 2, p).expect("suite runs")),
        );
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_oracle_sweep,
    bench_trace_sweep,
    bench_unimodal_sweep,
    bench_gen_suite
);
criterion_main!(benches);
