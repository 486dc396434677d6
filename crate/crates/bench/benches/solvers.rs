use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use vekua_bench::{manufactured_order_two, spiral};
use vekua_core::conic::solve_bianalytic_conic;
use vekua_core::disk::{check_solvability, solve_disk, standard_samples};
use vekua_core::{BivarPoly, Conic, Frame, GaussRat, QuadParams};

fn disk(c: &mut Criterion) {
    let p = manufactured_order_two();
    let params = QuadParams::default();
    let samples = standard_samples();
    c.bench_function("check_solvability_n2", |b| b.iter(|| check_solvability(black_box(&p), &samples, &params)));
    let sol = solve_disk(&p, &params).unwrap();
    let pts = spiral(50, 0.9);
    c.bench_function("solve_disk_n2_eval50", |b| {
        b.iter(|| pts.iter().map(|&z| sol.eval(z)).sum::<vekua_core::Complex64>())
    });
}

fn conic(c: &mut Criterion) {
    let hyperbola = Conic::from_ints(1, 0, -1, 0, 0, -1);
    let target = BivarPoly::monomial(2, 2, GaussRat::int(1), Frame::XY);
    c.bench_function("bianalytic_hyperbola_x2y2", |b| {
        b.iter(|| solve_bianalytic_conic(black_box(&hyperbola), &target))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = disk, conic
}
criterion_main!(benches);
