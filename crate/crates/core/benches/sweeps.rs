use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};

use flagq_core::qh::grading::verify_filtration;
use flagq_core::qh::QhEngine;
use flagq_core::seidel::{pieri_cases, verify_pieri, verify_seidel};
use flagq_core::Strategy;

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

// fresh engine per iteration, so the memo tables are rebuilt every time
fn cold_sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("cold");
    g.sample_size(10);
    for (name, s) in STRATEGIES {
        g.bench_with_input(BenchmarkId::new("seidel_n5", name), &s, |b, &s| {
            b.iter_batched(
                || QhEngine::new(5),
                |e| verify_seidel(&e, s).unwrap(),
                BatchSize::PerIteration,
            )
        });
        let cases = pieri_cases(5);
        g.bench_with_input(BenchmarkId::new("pieri_n5", name), &s, |b, &s| {
            b.iter_batched(
                || QhEngine::new(5),
                |e| verify_pieri(&e, &cases, s).unwrap(),
                BatchSize::PerIteration,
            )
        });
    }
    g.finish();
}

fn warm_filtration(c: &mut Criterion) {
    let e = QhEngine::new(4);
    verify_filtration(&e, 1, 12, Strategy::Sequential).unwrap();
    let mut g = c.benchmark_group("warm");
    g.sample_size(10);
    for (name, s) in STRATEGIES {
        g.bench_with_input(BenchmarkId::new("filtration_n4", name), &s, |b, &s| {
            b.iter(|| verify_filtration(&e, 2, 12, s).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, cold_sweeps, warm_filtration);
criterion_main!(benches);
