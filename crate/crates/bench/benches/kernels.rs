use std::hint::black_box;

use bicanon_core::maps::sigma;
use bicanon_core::poly::vars::{Y_LOWER, Z_LOWER};
use bicanon_core::poly::{poly_substitute, Assignment};
use bicanon_core::qaut::k4_normal_form_check;
use bicanon_core::{check_equation_invariance, family, map_order, verify_all, FieldElem, RatFunc};
use criterion::{criterion_group, criterion_main, Criterion};

fn field(c: &mut Criterion) {
    let a = FieldElem::from_ints([3, -1, 4, 1]);
    let b = FieldElem::from_ints([-2, 7, 1, -8]);
    let mut group = c.benchmark_group("field");
    group.bench_function("mul", |bch| bch.iter(|| black_box(&a) * black_box(&b)));
    group.bench_function("inv", |bch| bch.iter(|| black_box(&a).inv().unwrap()));
    group.finish();
}

fn substitution(c: &mut Criterion) {
    let f = family(1).unwrap();
    let asg = Assignment::new()
        .set(Y_LOWER, RatFunc::var(Y_LOWER).inv().unwrap())
        .set(Z_LOWER, RatFunc::var(Z_LOWER).inv().unwrap());
    c.bench_function("substitute/family-1-inversion", |bch| {
        bch.iter(|| poly_substitute(black_box(f.branch()), &asg).unwrap())
    });
}

fn maps(c: &mut Criterion) {
    let mut group = c.benchmark_group("maps");
    for k in 1..=3 {
        let fam = family(k).unwrap();
        let s = sigma(k).unwrap();
        group.bench_function(format!("invariance/sigma{k}"), |bch| {
            bch.iter(|| check_equation_invariance(&fam, black_box(&s)).unwrap())
        });
        group.bench_function(format!("order/sigma{k}"), |bch| {
            bch.iter(|| map_order(black_box(&s), 16).unwrap())
        });
    }
    group.finish();
}

fn end_to_end(c: &mut Criterion) {
    let mut group = c.benchmark_group("end-to-end");
    group.sample_size(10);
    group.bench_function("k4-brute-force", |bch| bch.iter(k4_normal_form_check));
    group.bench_function("verify-all", |bch| bch.iter(verify_all));
    group.finish();
}

criterion_group!(benches, field, substitution, maps, end_to_end);
criterion_main!(benches);
