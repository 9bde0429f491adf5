use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fuchsia_core::{
    generator_a, generator_b, generator_d, mobius_apply, nak_compose, nak_decompose,
    reduce_modular, tangent_apply, theta_map, HPoint, NakCoords, UnitTangent,
};

fn group_ops(c: &mut Criterion) {
    let g = generator_b(0.7).mul(&generator_a(1.3)).mul(&generator_d(2.1));
    let h = generator_d(0.4).mul(&generator_b(-2.5));
    let z = HPoint::new(0.3, 1.7).unwrap();
    let v = UnitTangent::from_angle(z, 0.9);
    let n = NakCoords::new(-4.0, 0.02, 5.5).unwrap();

    c.bench_function("mul", |b| b.iter(|| black_box(&g).mul(black_box(&h))));
    c.bench_function("inverse", |b| b.iter(|| black_box(&g).inverse()));
    c.bench_function("nak_roundtrip", |b| {
        b.iter(|| nak_decompose(&nak_compose(black_box(&n)).unwrap()))
    });
    c.bench_function("mobius_apply", |b| {
        b.iter(|| mobius_apply(black_box(&g), black_box(z)))
    });
    c.bench_function("tangent_apply", |b| {
        b.iter(|| tangent_apply(black_box(&g), black_box(&v)))
    });
    c.bench_function("theta_map", |b| b.iter(|| theta_map(black_box(&v))));
    let deep = HPoint::new(0.4123, 1e-4).unwrap();
    c.bench_function("reduce_modular_deep", |b| {
        b.iter(|| reduce_modular(black_box(deep), 1000, 1e-9))
    });
}

criterion_group!(benches, group_ops);
criterion_main!(benches);
