use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use simplexord::{estimate_comparability, rng_from_seed, sample_uniform_simplex, McConfig, OrderKind};

fn sampler(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_uniform_simplex");
    for n in [3usize, 8, 32] {
        group.throughput(Throughput::Elements(1));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, &n| {
            let mut rng = rng_from_seed(1);
            bench.iter(|| black_box(sample_uniform_simplex(n, 1.0, &mut rng).unwrap()))
        });
    }
    group.finish();
}

fn estimate(c: &mut Criterion) {
    let samples = 200_000;
    let mut group = c.benchmark_group("estimate_comparability");
    group.sample_size(10);
    group.throughput(Throughput::Elements(samples));
    for order in OrderKind::ALL {
        for n in [3usize, 6] {
            group.bench_with_input(BenchmarkId::new(order.as_str(), n), &n, |bench, &n| {
                bench.iter(|| {
                    estimate_comparability(order, n, 1.0, &McConfig::new(samples, 3))
                        .unwrap()
                        .hits
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sampler, estimate);
criterion_main!(benches);
