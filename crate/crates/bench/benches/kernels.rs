use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use appell_bench::{bench_nomes, spiral_points};
use appell_core::modular::{divisibility_residual, GammaElement, ThetaZeroIndex};
use appell_core::numeric::{kappa, theta};
use appell_core::qexact::{check_for1_exact, double_sum_series, triangular_gf};
use appell_core::{Complex64, TruncationPolicy};

fn numeric_kernels(c: &mut Criterion) {
    let pol = TruncationPolicy::default();
    let points = spiral_points(64);
    let a = Complex64::new(0.7, 0.4);
    let mut group = c.benchmark_group("numeric");
    for nome in bench_nomes() {
        let label = format!("|u|={:.2}", nome.u().norm());
        group.bench_with_input(BenchmarkId::new("theta", &label), &nome, |b, &n| {
            b.iter(|| points.iter().map(|&z| theta(z, n, &pol).unwrap()).sum::<Complex64>())
        });
        group.bench_with_input(BenchmarkId::new("kappa", &label), &nome, |b, &n| {
            b.iter(|| points.iter().map(|&z| kappa(a, z, n, &pol).unwrap()).sum::<Complex64>())
        });
    }
    group.finish();
}

fn exact_kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    group.bench_function("triangular_cube/80", |b| b.iter(|| triangular_gf(black_box(80)).pow(3)));
    group.bench_function("double_sum/80", |b| b.iter(|| double_sum_series(black_box(80))));
    group.bench_function("for1_exact/80", |b| b.iter(|| check_for1_exact(black_box(80)).unwrap()));
    group.finish();
}

fn modular_kernels(c: &mut Criterion) {
    let pol = TruncationPolicy::default();
    let grid = ThetaZeroIndex::grid(1);
    let tau = Complex64::new(0.5, 1.5);
    c.bench_function("modular/divisibility_L2", |b| {
        b.iter(|| divisibility_residual(&GammaElement::L2, black_box(tau), &grid, &pol).unwrap())
    });
}

criterion_group!(benches, numeric_kernels, exact_kernels, modular_kernels);
criterion_main!(benches);
