//! Benchmarks for the stages that dominate wall time: subspace enumeration,
//! fraction-free rank, and resolving-set verification.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use dualpolar::exactla;
use dualpolar::forms::{make_polar_space, Family};
use dualpolar::isotropic;
use dualpolar::resolving;

fn bench_field_construction(c: &mut Criterion) {
    c.bench_function("make_field_gf16", |b| {
        b.iter(|| dualpolar::make_field(black_box(16)).unwrap())
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let p = make_polar_space(Family::Cd, 2, 3).unwrap();
    c.bench_function("enumerate_generators_cd_q2_d3", |b| {
        b.iter(|| isotropic::enumerate_isotropic(black_box(&p), 3).unwrap())
    });
}

fn bench_rank(c: &mut Criterion) {
    let p = make_polar_space(Family::Cd, 2, 3).unwrap();
    let points = isotropic::enumerate_points(&p);
    let gens = isotropic::enumerate_isotropic(&p, 3).unwrap();
    let m = exactla::incidence_matrix(&p, &points, &gens).unwrap().to_exact();
    c.bench_function("rank_exact_135x63", |b| {
        b.iter(|| exactla::rank_exact(black_box(&m)))
    });
}

fn bench_resolving(c: &mut Criterion) {
    let p = make_polar_space(Family::Cd, 2, 2).unwrap();
    let points = isotropic::enumerate_points(&p);
    let gens = isotropic::enumerate_isotropic(&p, 2).unwrap();
    let (rs, _, dist) = resolving::rowbasis_resolving_set(&p, &points, &gens).unwrap();
    c.bench_function("verify_resolving_gq22", |b| {
        b.iter(|| resolving::verify_resolving(black_box(&dist), black_box(&rs.vertices)))
    });
    c.bench_function("greedy_minimize_gq22", |b| {
        b.iter(|| resolving::greedy_minimize(black_box(&dist), black_box(&rs)))
    });
}

criterion_group!(
    benches,
    bench_field_construction,
    bench_enumeration,
    bench_rank,
    bench_resolving
);
criterion_main!(benches);
