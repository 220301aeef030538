use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use aecolor::colorer::{color_graph, ColorerConfig};
use aecolor::generate::generate_sparse;
use aecolor::lab::sweep::theorem_sweep;
use aecolor::mad::mad_exact;
use aecolor::solver::SolveBudget;
use aecolor::{Color, Execution, Graph};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn sparse_batch(count: usize, n: usize) -> Vec<Graph> {
    (0..count as u64)
        .map(|seed| generate_sparse(n, n + n / 2, seed).unwrap())
        .collect()
}

fn sweep(c: &mut Criterion) {
    let budget = SolveBudget::new(2_000_000, Duration::from_secs(10)).unwrap();
    let mut group = c.benchmark_group("theorem_sweep_n5");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(theorem_sweep(5, &budget, exec)))
        });
    }
    group.finish();
}

fn mad_batch(c: &mut Criterion) {
    let graphs = sparse_batch(64, 120);
    let mut group = c.benchmark_group("mad_exact_64x120");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(exec.map(&graphs, mad_exact)))
        });
    }
    group.finish();
}

fn colorer_batch(c: &mut Criterion) {
    let graphs = sparse_batch(64, 150);
    let mut group = c.benchmark_group("color_graph_64x150");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                black_box(exec.map(&graphs, |g| {
                    let mut config = ColorerConfig::new(g.max_degree() as Color + 2);
                    config.fallback = None;
                    color_graph(g, &config)
                }))
            })
        });
    }
    group.finish();
}

criterion_group!(benches, sweep, mad_batch, colorer_batch);
criterion_main!(benches);
