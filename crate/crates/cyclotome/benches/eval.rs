//! Parallel vs sequential throughput of the table builders and the oracle
//! pass. Run with `cargo bench -p cyclotome`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cyclotome::cyclo::{cyclo_table, cyclo_table_seq};
use cyclotome::lines::CycloCtx;
use cyclotome::oracle::{OracleField, DEFAULT_ORACLE_BUDGET};

fn bench_cyclo_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("cyclo_table");
    group.sample_size(10);
    // e = 1093 is prime: every line goes through the general route
    for (q, n, eps) in [(3u64, 7u32, 1093u64), (2, 13, 8191), (5, 4, 156)] {
        let label = format!("q{q}_n{n}_eps{eps}");
        group.bench_with_input(BenchmarkId::new("parallel", &label), &eps, |b, &eps| {
            b.iter_batched(
                || CycloCtx::new(q, n).unwrap(),
                |ctx| cyclo_table(&ctx, eps).unwrap(),
                criterion::BatchSize::LargeInput,
            )
        });
        group.bench_with_input(BenchmarkId::new("sequential", &label), &eps, |b, &eps| {
            b.iter_batched(
                || CycloCtx::new(q, n).unwrap(),
                |ctx| cyclo_table_seq(&ctx, eps).unwrap(),
                criterion::BatchSize::LargeInput,
            )
        });
    }
    group.finish();
}

fn bench_oracle_pass(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_table");
    group.sample_size(10);
    let ctx = CycloCtx::new(2, 16).unwrap();
    let oracle = OracleField::build(&ctx, DEFAULT_ORACLE_BUDGET).unwrap();
    group.bench_function("parallel/q2_n16", |b| {
        b.iter(|| oracle.table(65535).unwrap())
    });
    group.bench_function("sequential/q2_n16", |b| {
        b.iter(|| oracle.table_seq(65535).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_cyclo_table, bench_oracle_pass);
criterion_main!(benches);
