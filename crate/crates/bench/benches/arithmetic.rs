use std::hint::black_box;

use colfam_core::pseudo::{check_wiles_relations, pseudo_from_matrix, reconstruct, Mat2, MatrixRep2, WordSample};
use colfam_core::series::weierstrass_prep;
use colfam_core::{Elem, RingParams, Series};
use criterion::{criterion_group, criterion_main, Criterion};

fn elem_mul(c: &mut Criterion) {
    for (p, e, n) in [(3, 1, 20), (5, 3, 24)] {
        let r = RingParams::new(p, e, n).unwrap();
        let x = Elem::from_int(r, 123_456_789);
        let y = Elem::from_int(r, 987_654_322).mul_pi_pow(1).checked_add(&Elem::one(r)).unwrap();
        c.bench_function(&format!("elem mul p={p} e={e} N={n}"), |b| b.iter(|| black_box(&x) * black_box(&y)));
    }
}

fn series_ops(c: &mut Criterion) {
    let r = RingParams::new(3, 1, 16).unwrap();
    let d = 32;
    let f = Series::from_ints(r, &(0..d as i64).map(|i| 7 * i * i + 3).collect::<Vec<_>>(), d);
    let g = Series::from_ints(r, &(0..d as i64).map(|i| 5 * i + 1).collect::<Vec<_>>(), d);
    c.bench_function("series mul d=32", |b| b.iter(|| black_box(&f) * black_box(&g)));
    // 9 + 3U + U^3 times a unit
    let h = &Series::from_ints(r, &[9, 3, 0, 1], d) * &g;
    c.bench_function("weierstrass d=32 lambda=3", |b| b.iter(|| weierstrass_prep(black_box(&h)).unwrap()));
}

fn pseudo(c: &mut Criterion) {
    let r = RingParams::new(3, 1, 8).unwrap();
    let e = |n| Elem::from_int(r, n);
    let rho = MatrixRep2::new(
        &e(1),
        vec![Mat2::new(e(1), e(1), e(3), e(1)), Mat2::new(e(2), e(1), e(1), e(1))],
    )
    .unwrap();
    let pi = pseudo_from_matrix(rho);
    let sample = WordSample::exhaustive(2, 4);
    c.bench_function("wiles check t=2 L=4", |b| b.iter(|| check_wiles_relations(black_box(&pi), &sample)));
    c.bench_function("reconstruct t=2 L=3", |b| b.iter(|| reconstruct(black_box(&pi), 3).unwrap()));
}

criterion_group!(benches, elem_mul, series_ops, pseudo);
criterion_main!(benches);
