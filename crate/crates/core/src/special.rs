//! Gamma function, Pochhammer symbols and Γ-brackets at arbitrary
//! precision.
//!
//! `Γ` itself is MPFR's correctly rounded `mpfr_gamma`; everything here is
//! computed afresh at the caller's precision, there is no global precision
//! state.

use std::fmt;

use rug::ops::Pow;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, RealValue};
use crate::rational::{fmt_rational, is_nonpositive_integer};

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, rug::float::Constant::Pi)
}

pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, rug::float::Constant::Euler)
}

pub fn sqrt_rational(r: &Rational, prec: u32) -> Float {
    Float::with_val(prec, r).sqrt()
}

/// `Γ(x)` for any real `x` that is not a pole. Negative non-integers are
/// allowed here; the public [`gamma`] restricts to `x > 0`.
pub(crate) fn gamma_f(x: &Float) -> Float {
    Float::with_val(x.prec(), x.gamma_ref())
}

/// `1/Γ(x)`, zero at the poles.
pub(crate) fn recip_gamma(x: &Rational, prec: u32) -> Float {
    if is_nonpositive_integer(x) {
        return Float::new(prec);
    }
    let g = gamma_f(&Float::with_val(prec, x));
    g.recip()
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: &Float, ctx: &PrecisionContext) -> Result<RealValue> {
    if !x.is_finite() || *x <= 0 {
        return Err(Error::Domain(format!(
            "gamma requires a positive argument, got {}",
            x.to_f64()
        )));
    }
    let x = Float::with_val(ctx.bits(), x);
    Ok(RealValue::new(gamma_f(&x), ctx))
}

/// `Γ(x)` for a positive rational; the argument is rounded once, at
/// working precision.
pub fn gamma_rational(x: &Rational, ctx: &PrecisionContext) -> Result<RealValue> {
    if *x <= 0 {
        return Err(Error::Domain(format!(
            "gamma requires a positive argument, got {}",
            fmt_rational(x)
        )));
    }
    gamma(&Float::with_val(ctx.bits(), x), ctx)
}

/// Both sides of `Γ(n)Γ(1-n) = π / sin(nπ)` for `0 < n < 1`.
pub fn reflection_check(n: &Rational, ctx: &PrecisionContext) -> Result<(RealValue, RealValue)> {
    if *n <= 0 || *n >= 1 {
        return Err(Error::Domain("reflection check needs 0 < n < 1".into()));
    }
    let prec = ctx.bits();
    let lhs = gamma_rational(n, ctx)?.into_inner()
        * gamma_rational(&(Rational::from(1) - n), ctx)?.into_inner();
    let p = pi(prec);
    let s = Float::with_val(prec, &p * Float::with_val(prec, n)).sin();
    let rhs = p / s;
    Ok((RealValue::new(lhs, ctx), RealValue::new(rhs, ctx)))
}

/// Both sides of the Gauss multiplication formula
/// `Γ(nz) = n^{nz-1/2} (2π)^{-(n-1)/2} ∏_{k<n} Γ(z + k/n)`.
pub fn multiplication_check(
    z: &Rational,
    n: u32,
    ctx: &PrecisionContext,
) -> Result<(RealValue, RealValue)> {
    if *z <= 0 {
        return Err(Error::Domain("multiplication check needs z > 0".into()));
    }
    if n < 2 {
        return Err(Error::Domain("multiplication check needs n >= 2".into()));
    }
    let prec = ctx.bits();
    let nz = Rational::from(n) * z;
    let lhs = gamma_rational(&nz, ctx)?.into_inner();
    let mut rhs = Float::with_val(prec, n);
    let expo = Float::with_val(prec, &nz - Rational::from((1, 2)));
    rhs = rhs.pow(&expo);
    let two_pi = pi(prec) * 2u32;
    let half = Float::with_val(prec, n - 1) / 2u32;
    rhs /= two_pi.pow(&half);
    for k in 0..n {
        let arg = z + Rational::from((k, n));
        rhs *= gamma_rational(&arg, ctx)?.into_inner();
    }
    Ok((RealValue::new(lhs, ctx), RealValue::new(rhs, ctx)))
}

/// Exact rising factorial `(a)_n = a(a+1)...(a+n-1)`.
pub fn pochhammer(a: &Rational, n: u32) -> Rational {
    let mut acc = Rational::from(1);
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += 1;
    }
    acc
}

/// Rising factorial at working precision.
pub fn pochhammer_real(a: &Float, n: u32) -> Float {
    let mut acc = Float::with_val(a.prec(), 1);
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += 1;
    }
    acc
}

/// `Γ[num / den] = ∏Γ(num_i) / ∏Γ(den_j)` over positive rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaBracket {
    #[serde(with = "crate::rational::serde_vec")]
    pub num: Vec<Rational>,
    #[serde(with = "crate::rational::serde_vec")]
    pub den: Vec<Rational>,
}

impl GammaBracket {
    pub fn new(num: Vec<Rational>, den: Vec<Rational>) -> Self {
        GammaBracket { num, den }
    }

    pub fn unit() -> Self {
        GammaBracket::new(Vec::new(), Vec::new())
    }

    /// Product of two brackets (concatenation).
    pub fn mul(&self, other: &GammaBracket) -> GammaBracket {
        let mut num = self.num.clone();
        num.extend(other.num.iter().cloned());
        let mut den = self.den.clone();
        den.extend(other.den.iter().cloned());
        GammaBracket { num, den }
    }

    pub fn recip(&self) -> GammaBracket {
        GammaBracket::new(self.den.clone(), self.num.clone())
    }

    /// Cancel arguments common to numerator and denominator, drop
    /// `Γ(1) = Γ(2) = 1` and sort each side.
    pub fn simplified(&self) -> GammaBracket {
        let mut num = self.num.clone();
        let mut den = Vec::with_capacity(self.den.len());
        for d in &self.den {
            if let Some(pos) = num.iter().position(|x| x == d) {
                num.remove(pos);
            } else {
                den.push(d.clone());
            }
        }
        let trivial = |x: &Rational| *x == 1 || *x == 2;
        num.retain(|x| !trivial(x));
        den.retain(|x| !trivial(x));
        num.sort();
        den.sort();
        GammaBracket { num, den }
    }

    /// Evaluate to working precision.
    pub fn eval(&self, ctx: &PrecisionContext) -> Result<RealValue> {
        for x in self.num.iter().chain(self.den.iter()) {
            if *x <= 0 {
                return Err(Error::Domain(format!(
                    "gamma bracket argument {} is not positive",
                    fmt_rational(x)
                )));
            }
        }
        let mut acc = Float::with_val(ctx.bits(), 1);
        for x in &self.num {
            acc *= gamma_rational(x, ctx)?.value();
        }
        for x in &self.den {
            acc /= gamma_rational(x, ctx)?.value();
        }
        Ok(RealValue::new(acc, ctx))
    }
}

impl fmt::Display for GammaBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[Rational]| {
            if v.is_empty() {
                "-".to_string()
            } else {
                v.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
            }
        };
        write!(f, "Γ[{} / {}]", side(&self.num), side(&self.den))
    }
}

pub fn gamma_bracket_eval(gb: &GammaBracket, ctx: &PrecisionContext) -> Result<RealValue> {
    gb.eval(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::agreed_digits;
    use crate::rational::rat;

    fn ctx50() -> PrecisionContext {
        PrecisionContext::with_target(50)
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let ctx = ctx50();
        let g = gamma_rational(&rat(1, 2), &ctx).unwrap();
        let sp = pi(ctx.bits()).sqrt();
        assert!(agreed_digits(g.value(), &sp) >= 50);
    }

    #[test]
    fn gamma_integer_is_factorial() {
        let ctx = ctx50();
        let g = gamma_rational(&rat(5, 1), &ctx).unwrap();
        assert_eq!(*g.value(), 24);
    }

    #[test]
    fn gamma_quarter_matches_reflection_and_duplication() {
        let ctx = ctx50();
        let prec = ctx.bits();
        let g14 = gamma_rational(&rat(1, 4), &ctx).unwrap().into_inner();
        let g34 = gamma_rational(&rat(3, 4), &ctx).unwrap().into_inner();
        let prod = Float::with_val(prec, &g14 * &g34);
        let refl = pi(prec) * Float::with_val(prec, 2).sqrt();
        assert!(agreed_digits(&prod, &refl) >= 50);
        // duplication at z = 1/4: Γ(1/2) = 2^{-1/2} π^{-1/2} Γ(1/4) Γ(3/4)
        let (l, r) = multiplication_check(&rat(1, 4), 2, &ctx).unwrap();
        assert!(l.agreed_digits(&r) >= 50);
        let digits = crate::precision::format_decimal(&g14, 50);
        assert!(digits.starts_with("3.62560990822190831193068515586767200299516768"));
    }

    #[test]
    fn nonpositive_argument_is_rejected() {
        let ctx = PrecisionContext::default();
        assert!(gamma_rational(&rat(0, 1), &ctx).is_err());
        assert!(gamma_rational(&rat(-1, 2), &ctx).is_err());
    }

    #[test]
    fn reflection_examples() {
        let ctx = PrecisionContext::default();
        let prec = ctx.bits();
        let cases = [
            (rat(1, 2), pi(prec)),
            (rat(1, 4), pi(prec) * Float::with_val(prec, 2).sqrt()),
            (rat(1, 3), pi(prec) * 2u32 / Float::with_val(prec, 3).sqrt()),
        ];
        for (n, expected) in cases {
            let (l, r) = reflection_check(&n, &ctx).unwrap();
            assert!(agreed_digits(l.value(), &expected) >= 40);
            assert!(agreed_digits(r.value(), &expected) >= 40);
        }
    }

    #[test]
    fn multiplication_examples() {
        let ctx = ctx50();
        let (l, r) = multiplication_check(&rat(1, 3), 3, &ctx).unwrap();
        assert!(agreed_digits(l.value(), &Float::with_val(ctx.bits(), 1)) >= 50);
        assert!(l.agreed_digits(&r) >= 50);
        let (l, r) = multiplication_check(&rat(1, 2), 2, &ctx).unwrap();
        assert!(l.agreed_digits(&r) >= 50);
        // Γ(3n + 1/3) expansion used for the cubic entries, n = 2.
        let (l, r) = multiplication_check(&rat(19, 9), 3, &ctx).unwrap();
        assert!(l.agreed_digits(&r) >= 50);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), 1);
        assert_eq!(pochhammer(&rat(1, 1), 6), 720);
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
    }

    #[test]
    fn bracket_examples() {
        let ctx = PrecisionContext::default();
        let prec = ctx.bits();
        let gb = GammaBracket::new(vec![rat(3, 2), rat(1, 2)], vec![rat(1, 1), rat(1, 1)]);
        let half_pi = pi(prec) / 2u32;
        assert!(agreed_digits(gb.eval(&ctx).unwrap().value(), &half_pi) >= 40);

        let gb = GammaBracket::new(vec![rat(1, 3); 3], vec![rat(2, 3); 3]);
        let ratio = gamma_rational(&rat(1, 3), &ctx).unwrap().into_inner()
            / gamma_rational(&rat(2, 3), &ctx).unwrap().into_inner();
        let cube = ratio.pow(3u32);
        assert!(agreed_digits(gb.eval(&ctx).unwrap().value(), &cube) >= 40);

        // Γ(3/4) = π√2/Γ(1/4) turns this into Γ³(1/4) / (2π Γ(7/8))
        let gb = GammaBracket::new(
            vec![rat(1, 4), rat(1, 2), rat(1, 2)],
            vec![rat(7, 8), rat(3, 4), rat(3, 4)],
        );
        let g14 = gamma_rational(&rat(1, 4), &ctx).unwrap().into_inner();
        let g78 = gamma_rational(&rat(7, 8), &ctx).unwrap().into_inner();
        let closed = g14.pow(3u32) / (pi(prec) * g78 * 2u32);
        assert!(agreed_digits(gb.eval(&ctx).unwrap().value(), &closed) >= 40);
    }

    #[test]
    fn bracket_simplify_and_display() {
        let gb = GammaBracket::new(vec![rat(1, 2), rat(1, 3)], vec![rat(1, 2), rat(2, 3)]);
        assert_eq!(gb.simplified().to_string(), "Γ[1/3 / 2/3]");
        let gb = GammaBracket::new(vec![rat(0, 1)], vec![]);
        assert!(gb.eval(&PrecisionContext::default()).is_err());
    }
}
