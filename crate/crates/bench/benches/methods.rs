//! Per-method evaluation cost at N = 20 and Galerkin solve cost against size.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use sphconv_core::spectral::{build_galerkin, min_dim};
use sphconv_core::{evaluate, Method, Problem};

fn methods_at_n20(c: &mut Criterion) {
    let p = Problem::new(20, 1.0).unwrap();
    let mut group = c.benchmark_group("n20");
    for m in Method::ALL {
        group.bench_with_input(BenchmarkId::from_parameter(m.name()), &m, |b, &m| {
            b.iter(|| evaluate(black_box(&p), m, None).unwrap())
        });
    }
    group.finish();
}

fn galerkin_scaling(c: &mut Criterion) {
    let p = Problem::new(10, 1.0).unwrap();
    let mut group = c.benchmark_group("galerkin_solve");
    for dim in [1_000usize, 10_000, 100_000] {
        let system = build_galerkin(&p, dim.max(min_dim(&p))).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(dim), &system, |b, s| {
            b.iter(|| s.solve().unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, methods_at_n20, galerkin_scaling);
criterion_main!(benches);
