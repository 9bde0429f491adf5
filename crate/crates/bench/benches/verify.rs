use criterion::{criterion_group, criterion_main, Criterion};
use fuchsia_core::{
    generator_a, generator_b, orbit_ball, verify_coverage, verify_disjointness,
    verify_lift_consistency, DomainSpec, Psl2Element, Space, VerifyConfig,
};

fn modular_ball() -> Vec<Psl2Element> {
    let s = Psl2Element::new(0.0, -1.0, 1.0, 0.0).unwrap();
    orbit_ball(&[s, generator_b(1.0)], 4)
        .into_iter()
        .filter(|g| !g.is_identity(1e-12))
        .collect()
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);

    let strip = DomainSpec::strip_a(1.0).unwrap();
    let strip_ball: Vec<_> = (1..=20)
        .flat_map(|k| [generator_a(k as f64), generator_a(-(k as f64))])
        .collect();
    let cfg = VerifyConfig::new(1_000, 1, strip_ball);
    group.bench_function("strip_coverage_1k", |b| {
        b.iter(|| verify_coverage(Space::H2, &strip, &cfg).unwrap())
    });
    group.bench_function("strip_disjointness_1k", |b| {
        b.iter(|| verify_disjointness(Space::H2, &strip, &cfg).unwrap())
    });

    let cfg = VerifyConfig::new(1_000, 2, modular_ball());
    let lifted = DomainSpec::lifted(DomainSpec::Modular).unwrap();
    group.bench_function("modular_coverage_psl2_1k", |b| {
        b.iter(|| verify_coverage(Space::Psl2, &lifted, &cfg).unwrap())
    });
    group.bench_function("modular_disjointness_1k", |b| {
        b.iter(|| verify_disjointness(Space::H2, &DomainSpec::Modular, &cfg).unwrap())
    });
    group.bench_function("modular_lift_consistency_1k", |b| {
        b.iter(|| verify_lift_consistency(&DomainSpec::Modular, &cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, verify);
criterion_main!(benches);
