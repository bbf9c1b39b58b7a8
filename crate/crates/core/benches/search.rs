use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ecctree::enumeration::{extremal_search, verify_inertia, Execution, Statistic, TreeFilter, DEFAULT_CAP};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn energy_minimum(c: &mut Criterion) {
    let mut group = c.benchmark_group("energy_minimum");
    group.sample_size(10);
    for n in [11, 12, 13] {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, n), &n, |b, &n| {
                b.iter(|| extremal_search(black_box(n), Statistic::Energy, TreeFilter::all(), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn inertia(c: &mut Criterion) {
    let mut group = c.benchmark_group("inertia");
    group.sample_size(10);
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new(mode, 13), |b| {
            b.iter(|| verify_inertia(black_box(13), DEFAULT_CAP, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, energy_minimum, inertia);
criterion_main!(benches);
