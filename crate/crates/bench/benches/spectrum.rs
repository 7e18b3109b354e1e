use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sepmult::{enumerate_spectrum, mbar3, single_deletion_bound, Truncation};
use sepmult_bench::{harmonic, irregular, named};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_spectrum");
    for k in [100u64, 1_000, 10_000] {
        let a = harmonic(4, 40);
        group.bench_with_input(BenchmarkId::new("harmonic4", k), &k, |b, &k| {
            b.iter(|| enumerate_spectrum(black_box(&a), k, Truncation::Strict).unwrap())
        });
        let a = irregular(6, 60, 11);
        group.bench_with_input(BenchmarkId::new("irregular6", k), &k, |b, &k| {
            b.iter(|| enumerate_spectrum(black_box(&a), k, Truncation::Strict).unwrap())
        });
    }
    let a = named("green31", 12);
    group.bench_function("green31_k31", |b| {
        b.iter(|| enumerate_spectrum(black_box(&a), 31, Truncation::Acknowledged).unwrap())
    });
    group.finish();
}

fn closed_forms(c: &mut Criterion) {
    c.bench_function("mbar3_first_10000", |b| {
        b.iter(|| (1..=10_000u64).map(|k| mbar3(black_box(k))).sum::<u64>())
    });
    c.bench_function("single_deletion_bound_n5_k500", |b| {
        b.iter(|| single_deletion_bound(5, black_box(500)).unwrap())
    });
}

criterion_group!(benches, enumeration, closed_forms);
criterion_main!(benches);
