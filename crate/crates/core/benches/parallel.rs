use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use trapcong::classic::{count_ternary_with, TernaryForm};
use trapcong::icong::{self, CountMode};
use trapcong::kcong;
use trapcong::Strategy;

const STRATEGIES: [(&str, Strategy); 2] = [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn count_f_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_f_oracle");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, 100_000), &s, |b, &s| {
            b.iter(|| icong::count_f(black_box(100_000), CountMode::Oracle, s))
        });
    }
    group.finish();
}

fn equivalence_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("classifier_vs_oracle");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, 20_000), &s, |b, &s| {
            b.iter(|| icong::classifier_oracle_mismatches(black_box(20_000), s))
        });
    }
    group.finish();
}

fn quartic_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("quartic_search");
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, 10_000), &s, |b, &s| {
            b.iter(|| (2..=10).map(|n| kcong::quartic_search(n, black_box(10_000), s).len()).sum::<usize>())
        });
    }
    group.finish();
}

fn ternary_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_ternary");
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, 500), &s, |b, &s| {
            b.iter(|| (1..=500u64).map(|m| count_ternary_with(TernaryForm::F1, black_box(m), s)).sum::<u64>())
        });
    }
    group.finish();
}

criterion_group!(benches, count_f_oracle, equivalence_sweep, quartic_table, ternary_counts);
criterion_main!(benches);
