use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use clarr_bench::{bundled_curve, near_pencil};
use clarr_core::arrangement::Curve;
use clarr_core::global::{global_tjurina, mdr};
use clarr_core::local::{all_singularities, milnor, tjurina};
use clarr_core::matrix::exact_rank;
use clarr_core::poly::{hilbert_jacobian, macaulay_matrix};

fn linear_algebra(c: &mut Criterion) {
    let f = bundled_curve("notfree_pencil").poly().clone();
    let gens = f.partials();
    let m = macaulay_matrix(&gens, 12);
    let mut g = c.benchmark_group("linear_algebra");
    g.sample_size(10);
    g.bench_function("exact_rank_macaulay_d7_k12", |b| {
        b.iter(|| exact_rank(black_box(&m)).unwrap())
    });
    g.bench_function("hilbert_jacobian_d7_k15", |b| {
        b.iter(|| hilbert_jacobian(black_box(&f), 15).unwrap())
    });
    let pencil = near_pencil(5);
    g.bench_function("global_tau_near_pencil_6", |b| {
        b.iter(|| global_tjurina(black_box(pencil.poly())).unwrap())
    });
    g.bench_function("mdr_d7", |b| b.iter(|| mdr(black_box(&f)).unwrap()));
    g.finish();
}

fn local_invariants(c: &mut Criterion) {
    let curve = bundled_curve("chern_factor");
    let sing = all_singularities(&curve).unwrap();
    let worst = sing.iter().max_by_key(|s| s.mu).unwrap().point.clone();
    let mut g = c.benchmark_group("local");
    g.sample_size(20);
    g.bench_function("milnor_worst_point_d9", |b| {
        b.iter(|| milnor(black_box(curve.poly()), &worst).unwrap())
    });
    g.bench_function("tjurina_worst_point_d9", |b| {
        b.iter(|| tjurina(black_box(curve.poly()), &worst).unwrap())
    });
    g.finish();
}

fn intersections(c: &mut Criterion) {
    let comps = bundled_curve("chern_factor").components().to_vec();
    let mut g = c.benchmark_group("arrangement");
    g.sample_size(10);
    g.bench_function("singularities_chern_factor", |b| {
        b.iter(|| {
            let curve = Curve::new(black_box(comps.clone())).unwrap();
            all_singularities(&curve).unwrap()
        })
    });
    g.finish();
}

criterion_group!(benches, linear_algebra, local_invariants, intersections);
criterion_main!(benches);
