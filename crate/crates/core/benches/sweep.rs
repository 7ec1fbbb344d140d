use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use xxz_core::sweep::{figure_specs, sweep_with, Execution};
use xxz_core::verify::run_verify_with;

fn modes() -> Vec<(&'static str, Execution)> {
    vec![
        ("sequential", Execution::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Execution::Parallel),
    ]
}

fn grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("fig5_grid");
    for points in [51, 201] {
        let spec = figure_specs(5, points).unwrap().remove(1).1;
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(name, points), &spec, |b, spec| {
                b.iter(|| sweep_with(black_box(spec), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::new(name, 2000), |b| {
            b.iter(|| run_verify_with(black_box(42), 2000, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, grid, verify);
criterion_main!(benches);
