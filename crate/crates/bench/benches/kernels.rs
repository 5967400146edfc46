use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use spacelike_core::propagator::{gamma_quadrature, k0, scan};
use spacelike_core::theorems::run_theorem;
use spacelike_core::{normal_form, parse};

fn algebra(c: &mut Criterion) {
    let square = parse("(2*x*H - i*hbar*H^-1*p*c^2)^2").unwrap();
    c.bench_function("normal_form_a6_square", |b| b.iter(|| normal_form(black_box(&square)).unwrap()));
    c.bench_function("verify_interval_identity", |b| b.iter(|| run_theorem(black_box("T_eq11")).unwrap()));
}

fn numerics(c: &mut Criterion) {
    c.bench_function("k0_series", |b| b.iter(|| k0(black_box(0.7)).unwrap()));
    c.bench_function("k0_continued_fraction", |b| b.iter(|| k0(black_box(7.5)).unwrap()));
    c.bench_function("gamma_quadrature", |b| b.iter(|| gamma_quadrature(black_box(0.4), black_box(1.3)).unwrap()));
    c.bench_function("scan_1000", |b| b.iter(|| scan(black_box(0.05), black_box(20.0), 1000).unwrap()));
}

criterion_group!(benches, algebra, numerics);
criterion_main!(benches);
