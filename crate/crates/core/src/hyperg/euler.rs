//! Euler integral representation
//! `F[a, A; b, B | z] = Γ[b / a, b-a] ∫₀¹ t^(a-1) (1-t)^(b-a-1) F[A; B | zt] dt`.

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::accel::levin_u;
use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, RealValue};
use crate::quad::TanhSinh;
use crate::special::GammaBracket;

use super::gauss2f1::Hyp2F1;
use super::series::{partial_sum_at_one, sum_series};
use super::{HypEvalReport, HypParams, Method};

/// Which `(a_i, b_j)` pair the representation peels off: the admissible
/// pair (`b > a > 0`) with the largest gap `b - a`.
pub fn choose_pair(p: &HypParams) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Rational)> = None;
    for (i, a) in p.upper.iter().enumerate() {
        for (j, b) in p.lower.iter().enumerate() {
            if *a > 0 && b > a {
                let gap = Rational::from(b - a);
                if best.as_ref().is_none_or(|(_, _, g)| gap > *g) {
                    best = Some((i, j, gap));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

enum Inner {
    /// `₁F₀[a; ; x] = (1 - x)^(-a)`
    Binomial(Float),
    Gauss(Hyp2F1),
}

/// `_{p+1}F_p` at `z ∈ (0, 1]` through one Euler integral, `p ≤ 2` after
/// cancelling equal parameters.
pub fn euler_integral_eval(p: &HypParams, z: &Float, ctx: &PrecisionContext) -> Result<HypEvalReport> {
    let full = HypParams::new(p.upper.clone(), p.lower.clone())?;
    if !z.is_finite() || *z <= 0 || *z > 1 {
        return Err(Error::Domain(format!("Euler integral needs z in (0, 1], got {}", z.to_f64())));
    }
    let r = full.reduced();
    if *z == 1 && r.excess() <= 0 {
        return Err(Error::Divergent { excess: crate::rational::fmt_rational(&r.excess()) });
    }
    let (i, j) = choose_pair(&r).ok_or_else(|| {
        Error::RepresentationInapplicable(format!("{r} has no parameter pair with b > a > 0"))
    })?;
    if r.p() > 2 {
        return Err(Error::Unsupported(format!("Euler reduction of {r} needs an inner 3F2 near 1")));
    }
    let prec = ctx.bits();
    let a1 = r.upper[i].clone();
    let b1 = r.lower[j].clone();
    let gap = Rational::from(&b1 - &a1);
    let mut rest_up = r.upper.clone();
    rest_up.remove(i);
    let mut rest_lo = r.lower.clone();
    rest_lo.remove(j);

    let inner = match rest_lo.len() {
        0 => Inner::Binomial(Float::with_val(prec, -rest_up[0].clone())),
        _ => Inner::Gauss(Hyp2F1::new(&rest_up[0], &rest_up[1], &rest_lo[0], prec)?),
    };
    let ea = Float::with_val(prec, Rational::from(&a1 - 1));
    let eb = Float::with_val(prec, Rational::from(&gap - 1));
    let zz = Float::with_val(prec, z);
    let one_minus_z = Float::with_val(prec, 1 - &zz);

    let integrand = |t: &Float, u: &Float| -> Result<Float> {
        let mut kernel = Float::with_val(prec, t.pow(&ea)) * Float::with_val(prec, u.pow(&eb));
        // w = 1 - z t = (1 - z) + z (1 - t), exact near t = 1
        let w = Float::with_val(prec, &zz * u) + &one_minus_z;
        let x = Float::with_val(prec, &zz * t);
        let f = match &inner {
            Inner::Binomial(e) => Float::with_val(prec, w.pow(e)),
            Inner::Gauss(h) => h.eval(&x, &w)?,
        };
        kernel *= f;
        Ok(kernel)
    };
    let quad = TanhSinh::new(prec, ctx.working_digits - 5).integrate(integrand)?;
    let pref = GammaBracket::new(vec![b1.clone()], vec![a1.clone(), gap.clone()]).eval(ctx)?;
    let value = Float::with_val(prec, pref.value() * &quad.value);
    let err = Float::with_val(prec, pref.value() * &quad.error_estimate).abs();
    Ok(HypEvalReport {
        value: RealValue::new(value, ctx),
        method: Method::EulerIntegral,
        terms_or_nodes: quad.evaluations,
        tail_bound: RealValue::new(err, ctx),
    })
}

/// Direct series at `z = 1` with a Levin u-transform. A cross-check only:
/// typically 10 to 20 correct digits.
pub fn accelerated_series_at_one(p: &HypParams, ctx: &PrecisionContext) -> Result<HypEvalReport> {
    let p = HypParams::new(p.upper.clone(), p.lower.clone())?;
    if p.excess() <= 0 {
        return Err(Error::Divergent { excess: crate::rational::fmt_rational(&p.excess()) });
    }
    let prec = ctx.bits().max(256) * 2;
    let (_, _, terms) = partial_sum_at_one(&p, 48, prec);
    let acc = levin_u(&terms, prec)?;
    Ok(HypEvalReport {
        value: RealValue::new(acc.value, ctx),
        method: Method::AcceleratedSeries,
        terms_or_nodes: acc.terms_used,
        tail_bound: RealValue::new(acc.error_estimate, ctx),
    })
}

/// Terminating series at `z = 1`: a finite sum.
pub(crate) fn terminating_at_one(p: &HypParams, ctx: &PrecisionContext) -> Result<HypEvalReport> {
    let prec = ctx.bits();
    let up: Vec<Float> = p.upper.iter().map(|a| Float::with_val(prec, a)).collect();
    let lo: Vec<Float> = p.lower.iter().map(|b| Float::with_val(prec, b)).collect();
    let s = sum_series(&up, &lo, &Float::with_val(prec, 1), prec)?;
    Ok(HypEvalReport {
        value: RealValue::new(s.value, ctx),
        method: Method::DirectSeries,
        terms_or_nodes: s.terms,
        tail_bound: RealValue::new(Float::new(prec), ctx),
    })
}
