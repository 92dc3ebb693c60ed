use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use combfield_bench::exp_minus_one;
use combfield_core::qft::{free_energy, partition_function, BuiltinModel};

fn bench_series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for order in [25usize, 50, 100] {
        let inner = exp_minus_one(order);
        g.bench_with_input(BenchmarkId::new("exp", order), &inner, |b, s| {
            b.iter(|| s.exp().unwrap())
        });
        let bell = inner.exp().unwrap();
        g.bench_with_input(BenchmarkId::new("log", order), &bell, |b, s| {
            b.iter(|| s.log().unwrap())
        });
    }
    g.finish();
}

fn bench_partition_function(c: &mut Criterion) {
    let mut g = c.benchmark_group("partition_function");
    g.sample_size(10);
    let bell = BuiltinModel::BellSquared.spec();
    for n in [50usize, 100, 200] {
        g.bench_with_input(BenchmarkId::new("bell-squared", n), &n, |b, &n| {
            b.iter(|| partition_function(&bell, n, 0).unwrap())
        });
    }
    let parts = BuiltinModel::Partitions.spec();
    g.bench_function("partitions/30", |b| b.iter(|| partition_function(&parts, 30, 30).unwrap()));
    let z = partition_function(&parts, 20, 20).unwrap();
    g.bench_function("free_energy/partitions-20", |b| b.iter(|| free_energy(&z).unwrap()));
    g.finish();
}

criterion_group!(benches, bench_series, bench_partition_function);
criterion_main!(benches);
