use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use liegen_bench::{a21, dense_matrix, h6, pair_for, w4};
use liegen_core::grassmann::{g_mul, GrassmannElement};
use liegen_core::models::{build_any, AnyFamily, CartanSpec, FamilySpec};

fn bench_construction(c: &mut Criterion) {
    c.bench_function("build A(2,1)", |b| {
        b.iter(|| build_any(black_box(AnyFamily::Classical(FamilySpec::a(2, 1)))).unwrap())
    });
    c.bench_function("build W(4)", |b| {
        b.iter(|| build_any(black_box(AnyFamily::Cartan(CartanSpec::w(4)))).unwrap())
    });
}

fn bench_closure(c: &mut Criterion) {
    let la = a21();
    let (xa, ya) = pair_for(&la);
    c.bench_function("closure A(2,1) pair", |b| {
        b.iter(|| la.closure(black_box(&[xa.clone(), ya.clone()])).unwrap())
    });
    let lw = w4();
    let (xw, yw) = pair_for(&lw);
    c.bench_function("closure W(4) pair", |b| {
        b.iter(|| lw.closure(black_box(&[xw.clone(), yw.clone()])).unwrap())
    });
    let lh = h6();
    let (xh, yh) = pair_for(&lh);
    c.bench_function("closure H(6) pair", |b| {
        b.iter(|| lh.closure(black_box(&[xh.clone(), yh.clone()])).unwrap())
    });
}

fn bench_linear_algebra(c: &mut Criterion) {
    let m = dense_matrix(40);
    c.bench_function("row_reduce 40x40", |b| {
        b.iter(|| black_box(&m).row_reduce())
    });
}

fn bench_grassmann(c: &mut Criterion) {
    let n = 10;
    let mut a = GrassmannElement::zero(n);
    let mut bb = GrassmannElement::zero(n);
    for u in 0..(1u32 << n) {
        if u.count_ones() % 2 == 0 {
            a.add_term(u, liegen_core::exactlin::int((u % 7) as i64 + 1));
        } else {
            bb.add_term(u, liegen_core::exactlin::int((u % 5) as i64 + 1));
        }
    }
    c.bench_function("g_mul arity 10", |b| {
        b.iter(|| g_mul(black_box(&a), black_box(&bb)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_construction,
    bench_closure,
    bench_linear_algebra,
    bench_grassmann
);
criterion_main!(benches);
