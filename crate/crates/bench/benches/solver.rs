use std::hint::black_box;

use adaptlearn_bench::{chain_instance, default_corpus, plan_cases};
use adaptlearn_core::harness::{run_device_matrix, Regime};
use adaptlearn_core::solver::{brute_force_blp, plan_program, solve_blp};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn dp(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_blp");
    for subjects in [5, 10, 20, 40] {
        let (sdg, table, budget) = chain_instance(subjects, 25, 1);
        group.bench_with_input(BenchmarkId::from_parameter(subjects), &subjects, |b, _| {
            b.iter(|| solve_blp(black_box(&sdg), black_box(&table), budget))
        });
    }
    group.finish();
}

fn brute(c: &mut Criterion) {
    let (sdg, table, budget) = chain_instance(5, 4, 2);
    c.bench_function("brute_force_blp/5x4", |b| b.iter(|| brute_force_blp(black_box(&sdg), black_box(&table), budget)));
    c.bench_function("solve_blp/5x4", |b| b.iter(|| solve_blp(black_box(&sdg), black_box(&table), budget)));
}

fn population(c: &mut Criterion) {
    let catalog = default_corpus();
    let cases = plan_cases(&catalog, 55_000.0);
    c.bench_function("plan_program/population", |b| {
        b.iter(|| {
            cases
                .iter()
                .filter(|p| plan_program(&catalog, &p.device, &p.user, &p.env, &p.target).is_ok())
                .count()
        })
    });
    let mut group = c.benchmark_group("device_matrix");
    group.sample_size(10);
    group.bench_function("medium", |b| b.iter(|| run_device_matrix(&catalog, Regime::Medium)));
    group.finish();
}

criterion_group!(benches, dp, brute, population);
criterion_main!(benches);
