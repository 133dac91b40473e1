use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use purecubic_bench::dense_matrix;
use purecubic_core::classgroup::{class_group, ClassGroupParams};
use purecubic_core::galoismodel::{enumerate_models, Constraints};
use purecubic_core::symbols::cubic_residue_rational;
use purecubic_core::zlinalg::{hnf, snf};
use purecubic_core::PureCubicField;

fn linalg(c: &mut Criterion) {
    let m = dense_matrix(12);
    c.bench_function("hnf 12x12", |b| b.iter(|| hnf(black_box(&m))));
    c.bench_function("snf 12x12", |b| b.iter(|| snf(black_box(&m))));
}

fn symbols(c: &mut Criterion) {
    c.bench_function("(3/p)_3 for p = 8821", |b| {
        b.iter(|| cubic_residue_rational(black_box(3), black_box(8821)))
    });
}

fn class_groups(c: &mut Criterion) {
    let field = Arc::new(PureCubicField::classify(7).expect("d = 7 is cube free"));
    let params = ClassGroupParams::default();
    c.bench_function("class group d = 7", |b| {
        b.iter(|| class_group(black_box(&field), &params))
    });
}

fn models(c: &mut Criterion) {
    let constraints = Constraints::default();
    c.bench_function("enumerate models", |b| {
        b.iter(|| enumerate_models(black_box(&constraints)))
    });
}

criterion_group!(benches, linalg, symbols, class_groups, models);
criterion_main!(benches);
