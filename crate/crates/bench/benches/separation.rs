use std::hint::black_box;

use clopen_bench::rotated_pair;
use clopen_core::{oracle_check, separate_clopen, Alphabet, OracleProperty, Source};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn clopen_separators(c: &mut Criterion) {
    let sigma = Alphabet::from_letters("ab");
    let mut group = c.benchmark_group("separate_clopen");
    for len in [4, 16, 64, 256] {
        let (u, v) = rotated_pair(len);
        group.bench_with_input(BenchmarkId::from_parameter(len), &(u, v), |b, (u, v)| {
            b.iter(|| separate_clopen(black_box(u), black_box(v), &sigma).unwrap())
        });
    }
    group.finish();
}

fn bounded_oracle(c: &mut Criterion) {
    let sigma = Alphabet::from_letters("ab");
    let (u, v) = rotated_pair(2);
    let expr = separate_clopen(&u, &v, &sigma).unwrap().expr;
    let mut group = c.benchmark_group("oracle_closed");
    group.sample_size(10);
    for max_len in [8, 12] {
        group.bench_with_input(BenchmarkId::from_parameter(max_len), &max_len, |b, &m| {
            b.iter(|| oracle_check(&Source::Expr(&expr, &sigma), OracleProperty::Closed, m).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, clopen_separators, bounded_oracle);
criterion_main!(benches);
