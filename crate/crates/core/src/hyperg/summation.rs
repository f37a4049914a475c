use rug::Rational;

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, is_nonpositive_integer};
use crate::special::GammaBracket;

use super::HypParams;

/// Gauss: `₂F₁[a, b; c | 1] = Γ[c, c-a-b / c-a, c-b]`.
pub fn gauss_sum(a: &Rational, b: &Rational, c: &Rational) -> Result<GammaBracket> {
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!("c = {} is a nonpositive integer", fmt_rational(c))));
    }
    let s = Rational::from(c - a) - b;
    if s <= 0 {
        return Err(Error::Divergent { excess: fmt_rational(&s) });
    }
    Ok(GammaBracket::new(
        vec![c.clone(), s],
        vec![Rational::from(c - a), Rational::from(c - b)],
    )
    .simplified())
}

/// Watson: `₃F₂[a, b, c; (1+a+b)/2, 2c | 1]`
/// `= Γ[1/2, (1+2c)/2, (1+a+b)/2, (1-a-b+2c)/2 / (1+a)/2, (1+b)/2, (1-a+2c)/2, (1-b+2c)/2]`.
pub fn watson_sum(a: &Rational, b: &Rational, c: &Rational) -> Result<GammaBracket> {
    let half = |x: Rational| x / 2u32;
    let one = || Rational::from(1);
    let two_c = Rational::from(c * 2u32);
    let excess = (half(one() + a + b) + &two_c) - a - b - c;
    if excess <= 0 {
        return Err(Error::Divergent { excess: fmt_rational(&excess) });
    }
    let num = vec![
        Rational::from((1, 2)),
        half(one() + &two_c),
        half(one() + a + b),
        half((one() - a) - b + &two_c),
    ];
    let den = vec![
        half(one() + a),
        half(one() + b),
        half((one() - a) + &two_c),
        half((one() - b) + &two_c),
    ];
    if let Some(x) = num.iter().chain(&den).find(|x| **x <= 0) {
        return Err(Error::Domain(format!("Watson bracket argument {} is not positive", fmt_rational(x))));
    }
    Ok(GammaBracket::new(num, den).simplified())
}

/// Watson's theorem applied to literal parameters: the lower list must be
/// exactly `((1+a+b)/2, 2c)` for the upper list `(a, b, c)`.
pub fn watson_for(p: &HypParams) -> Result<GammaBracket> {
    if p.upper.len() != 3 || p.lower.len() != 2 {
        return Err(Error::Pattern(format!("{p} is not a 3F2")));
    }
    let (a, b, c) = (&p.upper[0], &p.upper[1], &p.upper[2]);
    let l1 = (Rational::from(1) + a + b) / 2u32;
    let l2 = Rational::from(c * 2u32);
    if p.lower[0] != l1 || p.lower[1] != l2 {
        return Err(Error::Pattern(format!(
            "{p} does not have Watson shape: expected lower ({}, {})",
            fmt_rational(&l1),
            fmt_rational(&l2)
        )));
    }
    watson_sum(a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{agreed_digits, PrecisionContext};
    use crate::rational::rat;
    use crate::special::{gamma_rational, pi};

    #[test]
    fn gauss_examples() {
        let ctx = PrecisionContext::with_target(30);
        let g = gauss_sum(&rat(1, 2), &rat(1, 2), &rat(3, 2)).unwrap();
        let half_pi = pi(ctx.bits()) / 2u32;
        assert!(agreed_digits(g.eval(&ctx).unwrap().value(), &half_pi) >= 40);
        assert_eq!(gauss_sum(&rat(2, 5), &rat(0, 1), &rat(7, 3)).unwrap(), GammaBracket::unit());
        assert!(matches!(gauss_sum(&rat(1, 2), &rat(1, 2), &rat(1, 1)), Err(Error::Divergent { .. })));
        assert!(matches!(gauss_sum(&rat(1, 2), &rat(1, 2), &rat(-2, 1)), Err(Error::Domain(_))));
    }

    #[test]
    fn gauss_with_borwein_prefactor() {
        // (1/9)Γ[1/3,1/3 / 2/3]·₂F₁[1/3,1/3;1|1] = (1/9)Γ[1/3,1/3,1/3 / 2/3,2/3,2/3]
        let g = gauss_sum(&rat(1, 3), &rat(1, 3), &rat(1, 1)).unwrap();
        let pre = GammaBracket::new(vec![rat(1, 3), rat(1, 3)], vec![rat(2, 3)]);
        let total = pre.mul(&g).simplified();
        assert_eq!(total, GammaBracket::new(vec![rat(1, 3); 3], vec![rat(2, 3); 3]).simplified());
    }

    #[test]
    fn watson_examples() {
        let ctx = PrecisionContext::with_target(30);
        // (1/2,1/2,1/2) with lower (1,1): Γ⁴(1/4)/(4π³)
        let p = HypParams::f32([rat(1, 2), rat(1, 2), rat(1, 2)], [rat(1, 1), rat(1, 1)]);
        let v = watson_for(&p).unwrap().eval(&ctx).unwrap();
        let g = gamma_rational(&rat(1, 4), &ctx).unwrap().into_inner();
        let want = rug::Float::with_val(ctx.bits(), g.square().square()) / (pi(ctx.bits()).square() * pi(ctx.bits()) * 4u32);
        assert!(agreed_digits(v.value(), &want) >= 40);
        assert_eq!(watson_sum(&rat(0, 1), &rat(1, 3), &rat(2, 5)).unwrap(), GammaBracket::unit());
    }

    #[test]
    fn watson_with_theorem_prefactor() {
        // (1/8)Γ[1/4,5/8 / 7/8]·₃F₂[1/4,1/2,1/2; 7/8,1] = √(√2-1)Γ⁴(1/4)/(16π²)
        let ctx = PrecisionContext::with_target(30);
        let prec = ctx.bits();
        let p = HypParams::f32([rat(1, 4), rat(1, 2), rat(1, 2)], [rat(7, 8), rat(1, 1)]);
        let w = watson_for(&p).unwrap();
        let pre = GammaBracket::new(vec![rat(1, 4), rat(5, 8)], vec![rat(7, 8)]);
        let total = pre.mul(&w).simplified();
        let want = GammaBracket::new(vec![rat(1, 4), rat(5, 8), rat(1, 2)], vec![rat(7, 8), rat(3, 4), rat(3, 4)]);
        assert_eq!(total, want.simplified());
        let v = rug::Float::with_val(prec, total.eval(&ctx).unwrap().value() / 8u32);
        let table = crate::catalog::find_entry("T1.v").unwrap().rhs.constant.eval(prec).unwrap();
        assert!(agreed_digits(&v, &table) >= 40);
    }

    #[test]
    fn watson_pattern_is_exact() {
        let p = HypParams::f32([rat(1, 4), rat(1, 2), rat(1, 2)], [rat(1, 1), rat(7, 8)]);
        assert!(matches!(watson_for(&p), Err(Error::Pattern(_))));
        let p = HypParams::f32([rat(1, 4), rat(1, 2), rat(1, 2)], [rat(3, 8), rat(1, 1)]);
        assert!(matches!(watson_for(&p), Err(Error::Pattern(_))));
    }
}
