use std::hint::black_box;

use chandist::hamiltonian::{default_time_grid, optimal_time_scan, TimeMeasure};
use chandist::{
    d_t_iso, d_t_pauli_iso, entropic_divergence_k, entropic_divergence_k1, entropic_divergence_pauli_closed,
    DivergenceOptions,
};
use chandist_bench::{amplitude_damping, pauli_pair};
use criterion::{criterion_group, criterion_main, Criterion};

fn iso(c: &mut Criterion) {
    let (p, q) = pauli_pair();
    c.bench_function("d_t_iso choi spectra", |b| b.iter(|| d_t_iso(black_box(&p), black_box(&q)).unwrap()));
    c.bench_function("d_t_iso pauli jsd", |b| b.iter(|| d_t_pauli_iso(black_box(&p), black_box(&q))));
}

fn divergence(c: &mut Criterion) {
    let (p, q) = pauli_pair();
    let opts = DivergenceOptions::default();
    c.bench_function("d_t_K1 pauli closed", |b| b.iter(|| entropic_divergence_pauli_closed(black_box(&p), black_box(&q))));
    c.bench_function("d_t_K1 grid refine", |b| {
        b.iter(|| entropic_divergence_k1(black_box(&p), black_box(&q), &opts).unwrap())
    });
    let ad = amplitude_damping(0.4);
    let mut group = c.benchmark_group("amplitude search");
    group.sample_size(10);
    group.bench_function("d_t_K2", |b| b.iter(|| entropic_divergence_k(black_box(&ad), black_box(&q), 2, &opts).unwrap()));
    group.finish();
}

fn dynamics(c: &mut Criterion) {
    let grid = default_time_grid();
    let mut group = c.benchmark_group("time scan");
    group.sample_size(20);
    for (name, m) in [("d_t_iso", TimeMeasure::DtIso), ("d_t_K1", TimeMeasure::DtK1)] {
        group.bench_function(name, |b| b.iter(|| optimal_time_scan(1.0, 0.5, m, &grid).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, iso, divergence, dynamics);
criterion_main!(benches);
