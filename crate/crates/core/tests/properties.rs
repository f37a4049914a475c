use proptest::prelude::*;
use rug::{Float, Rational};
use thetaval::catalog::catalog;
use thetaval::hyperg::{accelerated_series_at_one, euler_integral_eval, HypParams};
use thetaval::precision::agreed_digits;
use thetaval::special::{gamma, gamma_rational, pochhammer, pochhammer_real};
use thetaval::theta::form_numeric;
use thetaval::PrecisionContext;

fn ctx(target: u32) -> PrecisionContext {
    PrecisionContext::with_target(target)
}

#[test]
fn integrands_decay_at_both_ends() {
    let c = ctx(30);
    let eps = c.target_eps();
    for e in catalog() {
        for t in [Rational::from(80), Rational::from((1, 400))] {
            let q = Float::with_val(c.bits(), -Float::with_val(c.bits(), &t)).exp();
            let v = form_numeric(&e.form, &q, &c).unwrap();
            assert!(*v.value() >= 0 && *v.value() < eps, "{} at t = {t}: {}", e.id, v.to_f64());
        }
    }
}

#[test]
fn euler_integral_matches_accelerated_series_on_catalog() {
    let c = ctx(30);
    let mut seen: Vec<HypParams> = Vec::new();
    for e in catalog() {
        let Some(p) = e.rhs.hyp.clone() else { continue };
        if seen.contains(&p) {
            continue;
        }
        let one = Float::with_val(c.bits(), 1);
        let integral = euler_integral_eval(&p, &one, &c).unwrap();
        let series = accelerated_series_at_one(&p, &c).unwrap();
        let d = agreed_digits(integral.value.value(), series.value.value());
        assert!(d >= 10, "{p}: {d} digits");
        seen.push(p);
    }
    assert_eq!(seen.len(), 14);
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..400, 1i64..48).prop_map(|(n, d)| Rational::from((n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recurrence(x in positive_rational()) {
        let c = ctx(40);
        let g = gamma_rational(&x, &c).unwrap();
        let g1 = gamma_rational(&(x.clone() + 1u32), &c).unwrap();
        let rhs = Float::with_val(c.bits(), g.value() * Float::with_val(c.bits(), &x));
        prop_assert!(agreed_digits(g1.value(), &rhs) >= 40);
    }

    #[test]
    fn pochhammer_shifts_gamma(a in positive_rational(), n in 0u32..30) {
        let c = ctx(40);
        let ga = gamma_rational(&a, &c).unwrap();
        let gan = gamma_rational(&(a.clone() + n), &c).unwrap();
        let exact = Float::with_val(c.bits(), ga.value() * &pochhammer(&a, n));
        let real = Float::with_val(c.bits(), ga.value() * pochhammer_real(&Float::with_val(c.bits(), &a), n));
        prop_assert!(agreed_digits(gan.value(), &exact) >= 40);
        prop_assert!(agreed_digits(gan.value(), &real) >= 40);
    }

    #[test]
    fn gamma_stable_under_extra_precision(x in positive_rational()) {
        let c = ctx(40);
        let wider = c.with_extra_working(20);
        let a = gamma_rational(&x, &c).unwrap();
        let b = gamma_rational(&x, &wider).unwrap();
        let rel = Float::with_val(64, a.value() - Float::with_val(c.bits(), b.value())).abs()
            / Float::with_val(64, b.value());
        prop_assert!(rel < c.target_eps());
    }

    #[test]
    fn gamma_rejects_nonpositive(n in -50i64..=0) {
        prop_assert!(gamma(&Float::with_val(64, n), &ctx(20)).is_err());
    }
}
