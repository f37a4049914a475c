//! Reduction of `∫ f dq/q` to `Γ-bracket × ₃F₂(1)` through the modular
//! parametrizations `θ₃² = ₂F₁[1/2,1/2;1|α]`, `α = θ₂⁴/θ₃⁴` and
//! `a = ₂F₁[1/3,2/3;1|α]`, `α = c³/a³`.

use std::fmt;

use rug::{Float, Rational};

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::hyperg::{pfq_at_one_with, EvalMethod, HypParams};
use crate::precision::{PrecisionContext, RealValue};
use crate::rational::fmt_rational;
use crate::special::GammaBracket;
use crate::theta::{ThetaKind, ThetaProductForm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackResult {
    pub scale: Rational,
    pub constant: GammaBracket,
    pub hyp: Option<HypParams>,
}

impl PullbackResult {
    pub fn eval(&self, ctx: &PrecisionContext) -> Result<RealValue> {
        self.eval_with(EvalMethod::Auto, ctx)
    }

    pub fn eval_with(&self, method: EvalMethod, ctx: &PrecisionContext) -> Result<RealValue> {
        let prec = ctx.bits();
        let mut v = Float::with_val(prec, self.constant.eval(ctx)?.value() * &self.scale);
        if let Some(h) = &self.hyp {
            v *= pfq_at_one_with(h, method, ctx)?.value.value();
        }
        Ok(RealValue::new(v, ctx))
    }
}

impl fmt::Display for PullbackResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}){}", fmt_rational(&self.scale), self.constant)?;
        if let Some(h) = &self.hyp {
            write!(f, " {h}(1)")?;
        }
        Ok(())
    }
}

/// Exponents of `θ₂, θ₃, θ₄` (or `c, a, b`) at the base argument.
#[derive(Default)]
struct Collected {
    /// `θ₂` or `c`: the factor carrying `α`.
    alpha: Rational,
    /// `θ₄` or `b`: the factor carrying `1 - α`.
    co_alpha: Rational,
}

fn collect(form: &ThetaProductForm) -> Result<(u32, Collected)> {
    let base = form.factors.iter().map(|f| f.arg_scale).min().ok_or_else(|| Error::Unsupported("empty product".into()))?;
    let mut out = Collected::default();
    for f in &form.factors {
        let e = Rational::from(f.exponent);
        match (f.arg_scale / base, f.arg_scale % base, f.kind) {
            (1, 0, ThetaKind::Jacobi2 | ThetaKind::BorweinC) => out.alpha += e,
            (1, 0, ThetaKind::Jacobi4 | ThetaKind::BorweinB) => out.co_alpha += e,
            (1, 0, ThetaKind::Jacobi3 | ThetaKind::BorweinA) => {}
            // θ₄²(x²) = θ₃(x) θ₄(x)
            (2, 0, ThetaKind::Jacobi4) => out.co_alpha += e / 2u32,
            _ => {
                return Err(Error::Unsupported(format!(
                    "no α-substitution for factor {f} against base argument q^{base}"
                )))
            }
        }
    }
    Ok((base, out))
}

/// Symbolic reduction `L(f, 1) = scale · Γ[r, s / r+s] · ₃F₂[r, u, v; r+s, 1 | 1]`.
///
/// With `x = q^base`, `θ₂^p θ₃^{6-p-s} θ₄^s (x) dx/x` becomes
/// `α^{p/4-1} (1-α)^{s/4-1} ₂F₁[1/2,1/2;1|α] dα`; the Borwein products
/// give `α^{p/3-1} (1-α)^{s/3-1} ₂F₁[1/3,2/3;1|α] dα` in the same way.
pub fn alpha_pullback(entry: &CatalogEntry) -> Result<PullbackResult> {
    if !entry.pullback_supported {
        return Err(Error::Unsupported(format!("{} has no α-pullback to a single ₃F₂", entry.id)));
    }
    pullback_form(&entry.form)
}

pub fn pullback_form(form: &ThetaProductForm) -> Result<PullbackResult> {
    let (base, c) = collect(form)?;
    let (unit, u, v) = if form.is_jacobi() {
        (Rational::from((1, 4)), Rational::from((1, 2)), Rational::from((1, 2)))
    } else if form.is_borwein() {
        (Rational::from((1, 3)), Rational::from((1, 3)), Rational::from((2, 3)))
    } else {
        return Err(Error::Unsupported("mixed Jacobi and Borwein factors".into()));
    };
    let r = Rational::from(&c.alpha * &unit);
    let s = Rational::from(&c.co_alpha * &unit);
    if r <= 0 || s <= 0 {
        return Err(Error::Unsupported(format!("{form} does not vanish at both ends of the α-interval")));
    }
    let rs = Rational::from(&r + &s);
    let scale = Rational::from(&form.prefactor / base);
    let constant = GammaBracket::new(vec![r.clone(), s], vec![rs.clone()]);
    let hyp = HypParams::f32([r, u, v], [rs, Rational::from(1)]);
    Ok(PullbackResult { scale, constant, hyp: Some(hyp) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, find_entry};
    use crate::rational::rat;

    #[test]
    fn theorem_examples() {
        let p = alpha_pullback(&find_entry("T1.xiii").unwrap()).unwrap();
        assert_eq!(p.scale, rat(1, 16));
        assert_eq!(p.constant, GammaBracket::new(vec![rat(1, 1), rat(1, 2)], vec![rat(3, 2)]));
        assert_eq!(p.hyp.unwrap(), HypParams::f32([rat(1, 1), rat(1, 2), rat(1, 2)], [rat(3, 2), rat(1, 1)]));

        let p = alpha_pullback(&find_entry("T1.v").unwrap()).unwrap();
        assert_eq!(p.scale, rat(1, 8));
        assert_eq!(p.constant, GammaBracket::new(vec![rat(1, 4), rat(5, 8)], vec![rat(7, 8)]));
        assert_eq!(p.hyp.unwrap(), HypParams::f32([rat(1, 4), rat(1, 2), rat(1, 2)], [rat(7, 8), rat(1, 1)]));

        let p = alpha_pullback(&find_entry("T2.i").unwrap()).unwrap();
        assert_eq!(p.scale, rat(1, 9));
        assert_eq!(p.constant, GammaBracket::new(vec![rat(1, 3), rat(1, 3)], vec![rat(2, 3)]));
        assert_eq!(p.hyp.unwrap(), HypParams::f32([rat(1, 3), rat(1, 3), rat(2, 3)], [rat(2, 3), rat(1, 1)]));
    }

    #[test]
    fn hypergeometric_factors_match_table() {
        // wherever the table shows a ₃F₂, the pullback produces the same one
        for e in catalog().into_iter().filter(|e| e.pullback_supported) {
            let p = alpha_pullback(&e).unwrap();
            if let Some(h) = &e.rhs.hyp {
                let sorted = |v: &[rug::Rational]| {
                    let mut v = v.to_vec();
                    v.sort();
                    v
                };
                let got = p.hyp.as_ref().unwrap();
                assert_eq!(sorted(&got.upper), sorted(&h.upper), "{}", e.id);
                assert_eq!(sorted(&got.lower), sorted(&h.lower), "{}", e.id);
            }
        }
    }

    #[test]
    fn unsupported_entries() {
        for id in ["T2.iv", "T2.v"] {
            assert!(matches!(alpha_pullback(&find_entry(id).unwrap()), Err(Error::Unsupported(_))));
        }
        // forcing the rules on T2.iv still fails: b(q⁹) against base q³
        assert!(pullback_form(&find_entry("T2.iv").unwrap().form).is_err());
    }

    #[test]
    fn display() {
        let p = alpha_pullback(&find_entry("T1.xiii").unwrap()).unwrap();
        assert_eq!(p.to_string(), "(1/16)Γ[1, 1/2 / 3/2] 3F2[1,1/2,1/2; 3/2,1](1)");
    }
}
