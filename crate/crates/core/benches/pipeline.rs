//! Compares the rayon-backed paths against a single-threaded pool. Build with
//! `--no-default-features` to measure the purely sequential fallback instead.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use causal_orbits::dynamics::{attractor_findings, reachability_matrix, CausalGraph};
use causal_orbits::ingest::VariableCatalog;
use causal_orbits::oracle::{paired_planted_model, synth_series, PlantedModel};
use causal_orbits::screening::correlation_matrix;

fn catalog(n: usize) -> VariableCatalog {
    VariableCatalog::from_names((1..=n).map(|i| format!("v{i}"))).unwrap()
}

fn random_graph(n: usize, p: f64, seed: u64) -> CausalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|_| rng.random_bool(p))
        .collect();
    CausalGraph::new(catalog(n), edges).unwrap()
}

fn wide_model(n: usize) -> PlantedModel {
    let edges = (1..n).step_by(2).map(|i| (i, i + 1));
    let base = paired_planted_model(0);
    PlantedModel {
        graph: CausalGraph::new(catalog(n), edges).unwrap(),
        base: vec![10_000.0; n],
        ..base
    }
}

#[cfg(feature = "parallel")]
fn modes() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        (
            "one-thread",
            rayon::ThreadPoolBuilder::new()
                .num_threads(1)
                .build()
                .unwrap(),
        ),
        (
            "all-threads",
            rayon::ThreadPoolBuilder::new().build().unwrap(),
        ),
    ]
}

#[cfg(feature = "parallel")]
fn run_in<R: Send>(pool: &rayon::ThreadPool, f: impl FnOnce() -> R + Send) -> R {
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
struct Sequential;

#[cfg(not(feature = "parallel"))]
fn modes() -> Vec<(&'static str, Sequential)> {
    vec![("sequential", Sequential)]
}

#[cfg(not(feature = "parallel"))]
fn run_in<R>(_: &Sequential, f: impl FnOnce() -> R) -> R {
    f()
}

fn bench_correlations(c: &mut Criterion) {
    let mut group = c.benchmark_group("correlation_matrix");
    for n in [14, 64, 160] {
        let table = synth_series(&wide_model(n), 144).unwrap();
        for (name, pool) in modes() {
            group.bench_with_input(BenchmarkId::new(name, n), &table, |b, t| {
                b.iter(|| run_in(&pool, || correlation_matrix(black_box(t)).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_reachability(c: &mut Criterion) {
    let mut group = c.benchmark_group("reachability_matrix");
    for n in [14, 128, 512] {
        let g = random_graph(n, 2.0 / n as f64, n as u64);
        for (name, pool) in modes() {
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| {
                b.iter(|| run_in(&pool, || reachability_matrix(black_box(g))))
            });
        }
    }
    group.finish();
}

fn bench_attractors(c: &mut Criterion) {
    let mut group = c.benchmark_group("attractor_findings");
    let g = random_graph(256, 1.5 / 256.0, 7);
    for (name, pool) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| run_in(&pool, || attractor_findings(black_box(&g))))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_correlations,
    bench_reachability,
    bench_attractors
);
criterion_main!(benches);
