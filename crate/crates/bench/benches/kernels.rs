use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rug::{Float, Rational};
use thetaval::catalog::find_entry;
use thetaval::hyperg::{pfq_at_one, HypParams};
use thetaval::lvalue::l1_mellin;
use thetaval::special::gamma_rational;
use thetaval::theta::{form_numeric, form_qexp};
use thetaval::PrecisionContext;

fn ctx() -> PrecisionContext {
    PrecisionContext::with_target(30)
}

fn qseries(c: &mut Criterion) {
    let form = find_entry("T1.i").unwrap().form;
    let order = Rational::from(2000);
    c.bench_function("form_qexp T1.i order 2000", |b| b.iter(|| form_qexp(black_box(&form), &order)));
}

fn theta(c: &mut Criterion) {
    let ctx = ctx();
    let form = find_entry("T2.i").unwrap().form;
    let q = Float::with_val(ctx.bits(), 0.37);
    c.bench_function("form_numeric T2.i", |b| b.iter(|| form_numeric(black_box(&form), &q, &ctx).unwrap()));
}

fn special(c: &mut Criterion) {
    let ctx = ctx();
    let x = Rational::from((1, 8));
    c.bench_function("gamma 1/8", |b| b.iter(|| gamma_rational(black_box(&x), &ctx).unwrap()));
}

fn hyperg(c: &mut Criterion) {
    let ctx = ctx();
    let p = find_entry("T1.i").unwrap().rhs.hyp.unwrap();
    c.bench_function("pfq_at_one T1.i", |b| b.iter(|| pfq_at_one(black_box(&p), &ctx).unwrap()));
    let gauss = HypParams::f21(Rational::from((1, 3)), Rational::from((2, 3)), Rational::from(2));
    c.bench_function("pfq_at_one 2F1", |b| b.iter(|| pfq_at_one(black_box(&gauss), &ctx).unwrap()));
}

fn lvalue(c: &mut Criterion) {
    let ctx = ctx();
    let form = find_entry("T1.xiii").unwrap().form;
    let mut group = c.benchmark_group("mellin");
    group.sample_size(10);
    group.bench_function("l1_mellin T1.xiii", |b| b.iter(|| l1_mellin(black_box(&form), &ctx).unwrap()));
    group.finish();
}

criterion_group!(benches, qseries, theta, special, hyperg, lvalue);
criterion_main!(benches);
