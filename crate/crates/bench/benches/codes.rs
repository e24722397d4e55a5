use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use lcd_agc::agcode::{column_search, enumerate_min};
use lcd_agc::constructions::{hermitian_build, s_set, thm4_build};
use lcd_agc::curve::Curve;
use lcd_agc::function_field::Divisor;
use lcd_agc::gf::{Fe, Field, Poly};
use lcd_agc::riemann_roch::rr_basis;
use lcd_agc_bench::{e16, gf16, pair_22_4, pair_22_8};

fn field_ops(c: &mut Criterion) {
    let f = gf16();
    let mut group = c.benchmark_group("gf16");
    group.bench_function("mul_all_pairs", |b| {
        b.iter(|| {
            let mut acc = Fe(0);
            for x in 0..16 {
                for y in 0..16 {
                    acc = f.add(acc, f.mul(Fe(x), Fe(y)));
                }
            }
            black_box(acc)
        })
    });
    group.bench_function("inv_all", |b| b.iter(|| (1..16).map(|x| f.inv(Fe(x)).unwrap().0).sum::<u64>()));
    group.finish();
}

fn distances(c: &mut Criterion) {
    let small = pair_22_4();
    let big = pair_22_8();
    let mut group = c.benchmark_group("distance");
    group.sample_size(10);
    group.bench_function("enumerate_22_4", |b| b.iter(|| enumerate_min(black_box(small.code.generator()), None).0));
    let parity = small.dual.code.parity_check();
    group.bench_function("column_search_22_18", |b| b.iter(|| column_search(black_box(&parity), 22, 6).0));
    let parity = big.dual.code.parity_check();
    group.bench_function("column_search_22_14", |b| b.iter(|| column_search(black_box(&parity), 22, 10).0));
    group.finish();
}

fn constructions(c: &mut Criterion) {
    let curve = e16();
    let alphas: Vec<Fe> = s_set(&curve).into_iter().filter(|&a| a != Fe(2)).collect();
    let f9 = Field::parse("3^2:x^2+2x+2").unwrap();
    let her = Curve::hermitian(&f9, 3).unwrap();
    let p = her.make_higher_degree_place(&Poly::from_coeffs(vec![Fe(4), Fe(2), Fe(3), Fe(1)]), 0).unwrap();
    let g = Divisor::from_terms(&her, [(lcd_agc::curve::Place::Infinity, 8), (p.clone(), 2)]);
    let mut group = c.benchmark_group("construct");
    group.sample_size(20);
    group.bench_function("thm4_22_8", |b| b.iter(|| thm4_build(&curve, Fe(2), &alphas, 4).unwrap().code.k()));
    group.bench_function("rr_basis_hermitian_deg14", |b| b.iter(|| rr_basis(&her, &g).unwrap().dim()));
    group.bench_function("hermitian_27_12", |b| b.iter(|| hermitian_build(&her, &p, 2).unwrap().code.k()));
    group.finish();
}

criterion_group!(benches, field_ops, distances, constructions);
criterion_main!(benches);
