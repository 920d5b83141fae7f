use criterion::{BenchmarkId, Criterion, criterion_group, criterion_main};
use irv_commlab::elicitation::run_ppr;
use irv_commlab::rules::{StvConfig, TieBreakPolicy, irv_tally, stv_tally};
use irv_commlab_bench::workload;
use std::hint::black_box;

const SIZES: &[(usize, usize)] = &[(4, 100), (8, 1_000), (16, 10_000)];

fn tallies(c: &mut Criterion) {
    let tb = TieBreakPolicy::default();
    let mut g = c.benchmark_group("tally");
    for (name, p) in workload(SIZES) {
        g.bench_with_input(BenchmarkId::new("irv", &name), &p, |b, p| b.iter(|| irv_tally(black_box(p), &tb, true)));
        g.bench_with_input(BenchmarkId::new("stv_k2", &name), &p, |b, p| {
            b.iter(|| stv_tally(black_box(p), &StvConfig::new(2), &tb))
        });
        g.bench_with_input(BenchmarkId::new("ppr", &name), &p, |b, p| b.iter(|| run_ppr(black_box(p), &tb)));
    }
    g.finish();
}

criterion_group!(benches, tallies);
criterion_main!(benches);
