use criterion::{criterion_group, criterion_main, Criterion};
use driftflight::specfun::{bessel_j, falling_factorial_coeffs, ln_gamma, mittag_leffler_wright, normalized_bessel};
use std::hint::black_box;

fn bessel(c: &mut Criterion) {
    let mut g = c.benchmark_group("bessel_j");
    for (label, mu, x) in [("series", 2.5, 3.0), ("steed", 2.5, 40.0), ("large_order", 30.5, 20.0)] {
        g.bench_function(label, |b| b.iter(|| bessel_j(black_box(mu), black_box(x)).unwrap()));
    }
    g.finish();
    c.bench_function("normalized_bessel/7.5@5", |b| b.iter(|| normalized_bessel(black_box(7.5), black_box(5.0)).unwrap()));
}

fn misc(c: &mut Criterion) {
    c.bench_function("ln_gamma", |b| b.iter(|| ln_gamma(black_box(37.25)).unwrap()));
    c.bench_function("mittag_leffler/1.5,2,2", |b| {
        b.iter(|| mittag_leffler_wright(black_box(1.5), black_box(2.0), black_box(2.0)).unwrap())
    });
    c.bench_function("falling_factorial_coeffs/12", |b| b.iter(|| falling_factorial_coeffs(black_box(12)).unwrap()));
}

criterion_group!(benches, bessel, misc);
criterion_main!(benches);
