use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use gtseq::labelings::{signed_count, ShiftedLabels, SignedCounter};
use gtseq::monotone::{alpha, count_extension};
use gtseq::operators::{binomial_determinant, product_formula};
use gtseq::patterns::signed_pattern_count;
use gtseq::{Extension, TreeSequence};
use gtseq_bench::{grid, staircase};

fn formulas(c: &mut Criterion) {
    let points = grid(4, -3, 3);
    c.bench_function("product_formula grid n=4", |b| {
        b.iter(|| points.iter().for_each(|k| drop(black_box(product_formula(k)))))
    });
    c.bench_function("binomial_determinant grid n=4", |b| {
        b.iter(|| points.iter().for_each(|k| drop(black_box(binomial_determinant(k)))))
    });
}

fn counting(c: &mut Criterion) {
    let mut g = c.benchmark_group("signed_count");
    for n in 2..=5 {
        let k = ShiftedLabels::new((0..n as i64).map(|i| i - 1).collect());
        let ts = TreeSequence::random(n, 1).unwrap();
        g.bench_with_input(BenchmarkId::new("fresh", n), &n, |b, _| b.iter(|| signed_count(&ts, black_box(&k))));
    }
    let ts = TreeSequence::random(4, 1).unwrap();
    let points = grid(4, -2, 2);
    g.bench_function("memoized grid n=4", |b| {
        b.iter(|| {
            let counter = SignedCounter::new(ts.clone());
            points.iter().for_each(|k| drop(black_box(counter.count(k))))
        })
    });
    g.finish();
    c.bench_function("signed_pattern_count 1..5", |b| b.iter(|| signed_pattern_count(black_box(&staircase(5)))));
}

fn monotone(c: &mut Criterion) {
    // alpha memoizes globally, so the recursion timings are warm lookups
    let mut g = c.benchmark_group("alpha");
    for n in 3..=6 {
        let k = staircase(n);
        g.bench_with_input(BenchmarkId::new("recursion", n), &k, |b, k| b.iter(|| alpha(black_box(k))));
    }
    let k = staircase(4);
    for v in Extension::ALL {
        g.bench_with_input(BenchmarkId::new("extension", v.index()), &k, |b, k| {
            b.iter(|| count_extension(v, black_box(k)))
        });
    }
    g.finish();
}

criterion_group!(benches, formulas, counting, monotone);
criterion_main!(benches);
