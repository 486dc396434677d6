use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use vekua_bench::spiral;
use vekua_core::integral::{cauchy_samples, t_disk, BoundaryKernel, BoundaryNodes};
use vekua_core::{Bicomplex, Complex64, ScalarField, TrigPoly};

fn t_operator(c: &mut Criterion) {
    let f = ScalarField::smooth(|z: Complex64| z * z.conj());
    let pts = spiral(16, 0.9);
    let mut group = c.benchmark_group("t_disk");
    for n in [64usize, 256] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| pts.iter().map(|&z| t_disk(black_box(&f), z, n)).sum::<Complex64>())
        });
    }
    group.finish();
}

fn cauchy(c: &mut Criterion) {
    let nodes = BoundaryNodes::new(1024).unwrap();
    let one = Complex64::new(1.0, 0.0);
    let g = nodes.sample(&(&TrigPoly::monomial(2, one) + &TrigPoly::monomial(-1, one)));
    let z = Complex64::new(0.3, -0.4);
    c.bench_function("cauchy_1024", |b| {
        b.iter(|| cauchy_samples(black_box(&g), BoundaryKernel::Cauchy { power: 1 }, z, &nodes))
    });
}

fn bicomplex_ops(c: &mut Criterion) {
    let u = Bicomplex::new(Complex64::new(0.3, 1.2), Complex64::new(-0.7, 0.1));
    let v = Bicomplex::new(Complex64::new(1.1, -0.4), Complex64::new(0.2, 0.9));
    c.bench_function("bicomplex_mul_exp", |b| b.iter(|| (black_box(u) * black_box(v)).exp()));
}

criterion_group!(benches, t_operator, cauchy, bicomplex_ops);
criterion_main!(benches);
