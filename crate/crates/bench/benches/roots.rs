use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use matroot::{
    characteristic_polynomial, enumerate_primary_roots, find_spectrum, principal_pth_root, series_root, spectral_root,
    BranchTuple, ComplexMatrix, RootOptions,
};
use matroot_bench::{diagonalizable, jordan, DIMS};

fn closed_form_only() -> RootOptions {
    RootOptions {
        series_oracle: false,
        spectral_oracle: false,
        ..RootOptions::default()
    }
}

fn principal(c: &mut Criterion) {
    let mut group = c.benchmark_group("principal");
    let options = closed_form_only();
    for dim in DIMS {
        let b = diagonalizable(dim).unwrap();
        group.bench_with_input(BenchmarkId::new("closed_form", dim), &b, |bench, b| {
            bench.iter(|| principal_pth_root(black_box(b), 3, &options).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("spectral", dim), &b, |bench, b| {
            let branches = BranchTuple::principal(dim);
            bench.iter(|| spectral_root(black_box(b), 3, &branches).unwrap())
        });
        let a = &ComplexMatrix::identity(dim) - &b;
        group.bench_with_input(BenchmarkId::new("series_500", dim), &a, |bench, a| {
            bench.iter(|| series_root(black_box(a), 3, 1.0, 500).unwrap())
        });
    }
    group.finish();
}

fn spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectrum");
    for dim in DIMS {
        let a = &ComplexMatrix::identity(dim) - &diagonalizable(dim).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(dim), &a, |bench, a| {
            bench.iter(|| {
                let poly = characteristic_polynomial(black_box(a)).unwrap();
                find_spectrum(&poly, 1e-7).unwrap()
            })
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for (groups, m, p) in [(2, 2, 2), (3, 2, 2), (3, 2, 3), (4, 1, 3)] {
        let jf = jordan(groups, m).unwrap();
        let id = format!("l{groups}_m{m}_p{p}");
        group.bench_with_input(BenchmarkId::from_parameter(id), &jf, |bench, jf| {
            bench.iter(|| enumerate_primary_roots(black_box(jf), p, 1.0).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, principal, spectrum, enumeration);
criterion_main!(benches);
