//! Identity suites: exact q-series identities at a given order and seeded
//! randomized numeric checks of the summation theorems and Γ formulas.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hyperg::{contiguous_check, cubic_transform_check, gauss_sum, pfq_at_one, watson_for, HypParams};
use crate::lvalue::remark_series_identity;
use crate::precision::{agreed_digits, PrecisionContext};
use crate::qseries::QExpansion;
use crate::rational::{fmt_rational, rat};
use crate::special::{multiplication_check, reflection_check};
use crate::theta::{theta_qexp, ThetaKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactSuiteResult {
    pub name: String,
    pub order: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericSuiteResult {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    /// Fewest agreed digits over all cases.
    pub worst_digits: u32,
    pub required_digits: u32,
    /// First failing case, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl NumericSuiteResult {
    pub fn pass(&self) -> bool {
        self.passed == self.cases
    }
}

fn th(kind: ThetaKind, scale: u32, order: usize) -> QExpansion {
    theta_qexp(kind, scale, &Rational::from(order as u64)).expect("theta kind matches family")
}

/// `θ₃⁴ = θ₂⁴ + θ₄⁴`.
pub fn jacobi_identity(order: usize) -> bool {
    let lhs = th(ThetaKind::Jacobi3, 1, order).pow(4);
    let rhs = &th(ThetaKind::Jacobi2, 1, order).pow(4) + &th(ThetaKind::Jacobi4, 1, order).pow(4);
    lhs.agrees_with(&rhs)
}

/// `θ₃(q)θ₄(q) = θ₄²(q²)`.
pub fn theta3_theta4_product(order: usize) -> bool {
    let lhs = &th(ThetaKind::Jacobi3, 1, order) * &th(ThetaKind::Jacobi4, 1, order);
    lhs.agrees_with(&th(ThetaKind::Jacobi4, 2, order).pow(2))
}

/// `a³ = b³ + c³`.
pub fn cubic_identity(order: usize) -> bool {
    let lhs = th(ThetaKind::BorweinA, 1, order).pow(3);
    let rhs = &th(ThetaKind::BorweinB, 1, order).pow(3) + &th(ThetaKind::BorweinC, 1, order).pow(3);
    lhs.agrees_with(&rhs)
}

/// `a(q³) = (a(q) + 2b(q))/3` and `c(q³) = (a(q) - b(q))/3`.
pub fn borwein_lemma(order: usize) -> bool {
    let a = th(ThetaKind::BorweinA, 1, order);
    let b = th(ThetaKind::BorweinB, 1, order);
    let third = rat(1, 3);
    let first = (&a + &b.scale(&rat(2, 1))).scale(&third).agrees_with(&th(ThetaKind::BorweinA, 3, order));
    let second = (&a - &b).scale(&third).agrees_with(&th(ThetaKind::BorweinC, 3, order));
    first && second
}

/// `b³(q³) = (a²b + ab² + b³)/3`.
pub fn borwein_b_cubed(order: usize) -> bool {
    let a = th(ThetaKind::BorweinA, 1, order);
    let b = th(ThetaKind::BorweinB, 1, order);
    let ab = &a * &b;
    let sum = &(&(&ab * &a) + &(&ab * &b)) + &b.pow(3);
    sum.scale(&rat(1, 3)).agrees_with(&th(ThetaKind::BorweinB, 3, order).pow(3))
}

/// All exact suites. Jacobi identities run at `order`, the Borwein and
/// remark identities at `min(order, 2000)`.
pub fn exact_suites(order: usize) -> Result<Vec<ExactSuiteResult>> {
    let cubic_order = order.min(2000);
    type Suite = (&'static str, usize, fn(usize) -> bool);
    let suites: [Suite; 6] = [
        ("jacobi-identity", order, jacobi_identity),
        ("theta3-theta4-product", order, theta3_theta4_product),
        ("borwein-cubic-identity", cubic_order, cubic_identity),
        ("borwein-lemma", cubic_order, borwein_lemma),
        ("borwein-b-cubed", cubic_order, borwein_b_cubed),
        ("remark-splitting", cubic_order, |n| remark_series_identity(n).unwrap_or(false)),
    ];
    Ok(suites
        .par_iter()
        .map(|(name, n, f)| ExactSuiteResult { name: name.to_string(), order: *n, pass: f(*n) })
        .collect())
}

fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    // uniform numerator over a random denominator, strictly inside (lo, hi)
    let den = rng.gen_range(2..=12i64);
    let num = rng.gen_range(lo * den + 1..hi * den);
    rat(num, den)
}

struct Case {
    label: String,
    digits: u32,
}

fn summarize(name: &'static str, required: u32, cases: Vec<Result<Case>>) -> NumericSuiteResult {
    let mut passed = 0;
    let mut worst = u32::MAX;
    let mut failure = None;
    let total = cases.len();
    for c in cases {
        match c {
            Ok(c) => {
                worst = worst.min(c.digits);
                if c.digits >= required {
                    passed += 1;
                } else if failure.is_none() {
                    failure = Some(format!("{}: {} digits", c.label, c.digits));
                }
            }
            Err(e) => {
                worst = 0;
                if failure.is_none() {
                    failure = Some(e.to_string());
                }
            }
        }
    }
    NumericSuiteResult { name: name.to_string(), cases: total, passed, worst_digits: worst, required_digits: required, failure }
}

/// Digits implied by a relative residual.
fn residual_digits(rel: f64) -> u32 {
    if rel <= 0.0 {
        u32::MAX / 2
    } else {
        (-rel.log10()).floor().max(0.0) as u32
    }
}

pub fn gauss_suite(seed: u64, cases: usize, ctx: &PrecisionContext) -> NumericSuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params: Vec<_> = (0..cases)
        .map(|_| {
            let a = random_rational(&mut rng, 0, 2);
            let b = random_rational(&mut rng, 0, 2);
            let extra = random_rational(&mut rng, 0, 2);
            let c = Rational::from(&a + &b) + extra;
            (a, b, c)
        })
        .collect();
    let results = params
        .par_iter()
        .map(|(a, b, c)| {
            let v = pfq_at_one(&HypParams::f21(a.clone(), b.clone(), c.clone()), ctx)?;
            let g = gauss_sum(a, b, c)?.eval(ctx)?;
            Ok(Case {
                label: format!("2F1[{},{};{}]", fmt_rational(a), fmt_rational(b), fmt_rational(c)),
                digits: agreed_digits(v.value.value(), g.value()),
            })
        })
        .collect();
    summarize("gauss", ctx.target_digits, results)
}

pub fn watson_suite(seed: u64, cases: usize, ctx: &PrecisionContext) -> NumericSuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5741_5453);
    let params: Vec<_> = (0..cases)
        .map(|_| loop {
            let a = random_rational(&mut rng, 0, 1);
            let b = random_rational(&mut rng, 0, 1);
            let c = random_rational(&mut rng, 0, 2);
            let lower = [(Rational::from(1) + &a + &b) / 2u32, Rational::from(&c * 2u32)];
            let p = HypParams::f32([a, b, c], lower);
            // admissible: convergent at 1
            if p.excess() > 0 {
                break p;
            }
        })
        .collect();
    let results = params
        .par_iter()
        .map(|p| {
            let v = pfq_at_one(p, ctx)?;
            let w = watson_for(p)?.eval(ctx)?;
            Ok(Case { label: p.to_string(), digits: agreed_digits(v.value.value(), w.value()) })
        })
        .collect();
    summarize("watson", 20.min(ctx.target_digits), results)
}

pub fn contiguous_suite(seed: u64, cases: usize, ctx: &PrecisionContext) -> NumericSuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x434f_4e54);
    let params: Vec<_> = (0..cases)
        .map(|i| {
            let a = random_rational(&mut rng, 0, 1);
            let b = random_rational(&mut rng, 0, 1);
            let c = random_rational(&mut rng, 0, 1);
            let e = Rational::from(1) + random_rational(&mut rng, 0, 2);
            // keep every shifted member convergent at 1
            let need = Rational::from(&a + &b) + &c + 1u32 - &e;
            let f = if need > 0 { need + random_rational(&mut rng, 0, 1) } else { Rational::from(1) + random_rational(&mut rng, 0, 1) };
            let z = if i % 2 == 0 { rat(1, 2) } else { rat(1, 1) };
            (a, b, c, e, f, z)
        })
        .collect();
    let required = ctx.target_digits - 5;
    let results = params
        .par_iter()
        .map(|(a, b, c, e, f, z)| {
            let r = contiguous_check(a, b, c, e, f, &Float::with_val(ctx.bits(), z), ctx)?;
            Ok(Case {
                label: format!(
                    "a={} b={} c={} e={} f={} z={}",
                    fmt_rational(a),
                    fmt_rational(b),
                    fmt_rational(c),
                    fmt_rational(e),
                    fmt_rational(f),
                    fmt_rational(z)
                ),
                digits: residual_digits(r.relative()),
            })
        })
        .collect();
    summarize("contiguous", required, results)
}

pub fn cubic_suite(ctx: &PrecisionContext) -> NumericSuiteResult {
    let grid: Vec<(Rational, f64)> = [rat(1, 3), rat(1, 2), rat(1, 1), rat(3, 2)]
        .into_iter()
        .flat_map(|a| [0.1, 0.3, 0.5, 0.7].into_iter().map(move |x| (a.clone(), x)))
        .collect();
    let results = grid
        .par_iter()
        .map(|(a, x)| {
            let r = cubic_transform_check(a, &Float::with_val(ctx.bits(), *x), ctx)?;
            Ok(Case { label: format!("a={} x={x}", fmt_rational(a)), digits: residual_digits(r.relative()) })
        })
        .collect();
    summarize("cubic-transform", ctx.target_digits - 5, results)
}

pub fn reflection_suite(seed: u64, cases: usize, ctx: &PrecisionContext) -> NumericSuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5245_464c);
    let xs: Vec<Rational> = (0..cases)
        .map(|_| {
            let den = rng.gen_range(2..=60i64);
            rat(rng.gen_range(1..den), den)
        })
        .collect();
    let results = xs
        .par_iter()
        .map(|x| {
            let (l, r) = reflection_check(x, ctx)?;
            Ok(Case { label: format!("x={}", fmt_rational(x)), digits: l.agreed_digits(&r) })
        })
        .collect();
    summarize("reflection", ctx.target_digits, results)
}

pub fn multiplication_suite(seed: u64, cases: usize, ctx: &PrecisionContext) -> NumericSuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4d55_4c54);
    let xs: Vec<(Rational, u32)> = (0..cases)
        .map(|i| (random_rational(&mut rng, 0, 5), if i % 2 == 0 { 2 } else { 3 }))
        .collect();
    let results = xs
        .par_iter()
        .map(|(x, n)| {
            let (l, r) = multiplication_check(x, *n, ctx)?;
            Ok(Case { label: format!("z={} n={n}", fmt_rational(x)), digits: l.agreed_digits(&r) })
        })
        .collect();
    summarize("multiplication", ctx.target_digits, results)
}

/// All numeric suites with their standard case counts.
pub fn numeric_suites(seed: u64, ctx: &PrecisionContext) -> Vec<NumericSuiteResult> {
    vec![
        gauss_suite(seed, 30, ctx),
        watson_suite(seed, 20, ctx),
        contiguous_suite(seed, 20, ctx),
        cubic_suite(ctx),
        reflection_suite(seed, 50, ctx),
        multiplication_suite(seed, 20, ctx),
    ]
}
