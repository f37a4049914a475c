use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::precision::{pow10, PrecisionContext, RealValue};

use super::{pfq_at_one, pfq_series, HypParams};

/// Absolute residual of an identity and the magnitude it is measured
/// against.
#[derive(Debug, Clone)]
pub struct Residual {
    pub residual: RealValue,
    pub scale: RealValue,
}

impl Residual {
    /// `residual ≤ 10^-digits · scale`.
    pub fn holds_to(&self, digits: u32) -> bool {
        let lim = Float::with_val(64, self.scale.value()) * pow10(-(digits as i32), 64);
        *self.residual.value() <= lim
    }

    pub fn relative(&self) -> f64 {
        let s = self.scale.to_f64();
        if s == 0.0 {
            self.residual.to_f64()
        } else {
            self.residual.to_f64() / s
        }
    }
}

fn eval_3f2(p: &HypParams, z: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let r = if *z == 1 { pfq_at_one(p, ctx)? } else { pfq_series(p, z, ctx)? };
    Ok(r.value.into_inner())
}

/// `(b-a) F[a,b,c; e,f] + a F[a+1,b,c; e,f] - b F[a,b+1,c; e,f]` at `z`.
pub fn contiguous_check(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    e: &Rational,
    f: &Rational,
    z: &Float,
    ctx: &PrecisionContext,
) -> Result<Residual> {
    if *z <= 0 || *z > 1 {
        return Err(Error::Domain("contiguous check needs z in (0, 1]".into()));
    }
    let prec = ctx.bits();
    let one = Rational::from(1);
    let mk = |x: Rational, y: Rational| HypParams::new(vec![x, y, c.clone()], vec![e.clone(), f.clone()]);
    let f1 = eval_3f2(&mk(a.clone(), b.clone())?, z, ctx)?;
    let f2 = eval_3f2(&mk(Rational::from(a + &one), b.clone())?, z, ctx)?;
    let f3 = eval_3f2(&mk(a.clone(), Rational::from(b + &one))?, z, ctx)?;
    let t1 = Float::with_val(prec, Rational::from(b - a)) * &f1;
    let t2 = Float::with_val(prec, a) * &f2;
    let t3 = Float::with_val(prec, b) * &f3;
    let scale = [&t1, &t2, &t3]
        .iter()
        .map(|t| Float::with_val(prec, t.abs_ref()))
        .fold(Float::new(prec), |m, x| if x > m { x } else { m });
    let res = Float::with_val(prec, &t1 + &t2) - &t3;
    Ok(Residual { residual: RealValue::new(res.abs(), ctx), scale: RealValue::new(scale, ctx) })
}

/// Cubic transformation
/// `₂F₁[a/3, (a+1)/3; (a+1)/2 | 1 - ((1-x)/(1+2x))³] = (1+2x)^a ₂F₁[a/3, (a+1)/3; (a+5)/6 | x³]`,
/// both sides summed directly.
pub fn cubic_transform_check(a: &Rational, x: &Float, ctx: &PrecisionContext) -> Result<Residual> {
    if *x < 0 || *x >= 1 {
        return Err(Error::Domain("cubic transformation needs x in [0, 1)".into()));
    }
    let prec = ctx.bits();
    let u1 = Rational::from(a / 3u32);
    let u2 = Rational::from(a + 1u32) / 3u32;
    let l_left = Rational::from(a + 1u32) / 2u32;
    let l_right = Rational::from(a + 5u32) / 6u32;
    let x = Float::with_val(prec, x);
    let ratio = Float::with_val(prec, 1 - &x) / Float::with_val(prec, 1 + Float::with_val(prec, &x * 2u32));
    let zl = Float::with_val(prec, 1 - ratio.pow(3u32));
    let zr = Float::with_val(prec, (&x).pow(3u32));
    let lhs = pfq_series(&HypParams::new(vec![u1.clone(), u2.clone()], vec![l_left])?, &zl, ctx)?;
    let rhs = pfq_series(&HypParams::new(vec![u1, u2], vec![l_right])?, &zr, ctx)?;
    let base = Float::with_val(prec, 1 + Float::with_val(prec, &x * 2u32));
    let factor = base.pow(Float::with_val(prec, a));
    let right = Float::with_val(prec, rhs.value.value() * &factor);
    let res = Float::with_val(prec, lhs.value.value() - &right).abs();
    let scale = Float::with_val(prec, right.abs_ref());
    Ok(Residual { residual: RealValue::new(res, ctx), scale: RealValue::new(scale, ctx) })
}
