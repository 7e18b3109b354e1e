use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use sepmult::{search_max, SearchOptions};
use sepmult_bench::search_cases;

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search_max");
    group.sample_size(10);
    for threads in [1usize, 4] {
        let opts = SearchOptions {
            threads,
            check_saturation: false,
            ..SearchOptions::default()
        };
        for (id, bounds) in search_cases() {
            group.bench_function(format!("{id}_t{threads}"), |b| {
                b.iter(|| search_max(black_box(&bounds), &opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, search);
criterion_main!(benches);
