use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fhl_bench::{spec, SLICES};
use fhl_core::cohomology::homology_dims;
use fhl_core::filtering::basis_change;
use fhl_core::laplacian::spectrum;
use fhl_core::liealg::AlgebraSpec;
use fhl_core::stablecycles::triple_agreement;

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("homology_dims");
    g.sample_size(10);
    for (family, k, n) in SLICES {
        let s = spec(family, k);
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{s} n={n}")),
            &s,
            |b, s| b.iter(|| homology_dims(black_box(s), n)),
        );
    }
    g.finish();
}

fn filtering(c: &mut Criterion) {
    let mut g = c.benchmark_group("basis_change");
    g.sample_size(10);
    for (family, k, n) in SLICES {
        let s = spec(family, k);
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{s} n={n} dim=3")),
            &s,
            |b, s| b.iter(|| basis_change(black_box(s), n, 3).unwrap()),
        );
    }
    g.finish();
}

fn laplacian(c: &mut Criterion) {
    let mut g = c.benchmark_group("spectrum");
    g.sample_size(10);
    for n in [12, 16, 20] {
        g.bench_with_input(BenchmarkId::new("witt1", n), &n, |b, &n| {
            b.iter(|| spectrum(&AlgebraSpec::witt(1), black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn stable(c: &mut Criterion) {
    let mut g = c.benchmark_group("triple_agreement");
    g.sample_size(10);
    for (family, k, n) in SLICES.into_iter().filter(|s| s.1 <= 2) {
        let s = spec(family, k);
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{s} n={n} dim=3")),
            &s,
            |b, s| b.iter(|| triple_agreement(black_box(s), n, 3).unwrap()),
        );
    }
    g.finish();
}

criterion_group!(benches, homology, filtering, laplacian, stable);
criterion_main!(benches);
