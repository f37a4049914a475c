use rug::ops::Pow;
use rug::{Float, Rational};

use crate::accel::levin_u;
use crate::error::Result;
use crate::hyperg::Hyp2F1;
use crate::precision::{agreed_digits, PrecisionContext, RealValue};
use crate::special::gamma_f;
use crate::theta::{theta_from_log_nome, theta_qexp, ThetaKind};

/// One sample of a parametrization or Jacobian identity.
#[derive(Debug, Clone)]
pub struct ParamCheck {
    pub q: f64,
    pub lhs: RealValue,
    pub rhs: RealValue,
    pub agreed_digits: u32,
}

fn log_nome(q: &Float, prec: u32) -> Float {
    Float::with_val(prec, Float::with_val(prec, q).ln())
}

/// `(α, 1 - α)` for the Jacobi (`θ₂⁴/θ₃⁴`) or Borwein (`c³/a³`) modulus,
/// with `1 - α` computed from `θ₄` or `b` directly.
fn modulus(jacobi: bool, log_q: &Float) -> (Float, Float) {
    let prec = log_q.prec();
    if jacobi {
        let t2 = theta_from_log_nome(ThetaKind::Jacobi2, log_q);
        let t3 = theta_from_log_nome(ThetaKind::Jacobi3, log_q);
        let t4 = theta_from_log_nome(ThetaKind::Jacobi4, log_q);
        let a = Float::with_val(prec, &t2 / &t3).pow(4u32);
        let w = Float::with_val(prec, &t4 / &t3).pow(4u32);
        (a, w)
    } else {
        let a = theta_from_log_nome(ThetaKind::BorweinA, log_q);
        let b = theta_from_log_nome(ThetaKind::BorweinB, log_q);
        let c = theta_from_log_nome(ThetaKind::BorweinC, log_q);
        (Float::with_val(prec, &c / &a).pow(3u32), Float::with_val(prec, &b / &a).pow(3u32))
    }
}

fn hyp(jacobi: bool, prec: u32) -> Result<Hyp2F1> {
    let (a, b) = if jacobi { (Rational::from((1, 2)), Rational::from((1, 2))) } else { (Rational::from((1, 3)), Rational::from((2, 3))) };
    Hyp2F1::new(&a, &b, &Rational::from(1), prec)
}

fn parametrization(jacobi: bool, q: &Float, ctx: &PrecisionContext) -> Result<ParamCheck> {
    let prec = ctx.bits();
    let lq = log_nome(q, prec);
    let (alpha, w) = modulus(jacobi, &lq);
    let f = hyp(jacobi, prec)?.eval(&alpha, &w)?;
    let lhs = if jacobi {
        theta_from_log_nome(ThetaKind::Jacobi3, &lq).square()
    } else {
        theta_from_log_nome(ThetaKind::BorweinA, &lq)
    };
    Ok(ParamCheck { q: q.to_f64(), agreed_digits: agreed_digits(&lhs, &f), lhs: RealValue::new(lhs, ctx), rhs: RealValue::new(f, ctx) })
}

/// `θ₃²(q) = ₂F₁[1/2,1/2;1 | θ₂⁴/θ₃⁴]`.
pub fn jacobi_parametrization_check(q: &Float, ctx: &PrecisionContext) -> Result<ParamCheck> {
    parametrization(true, q, ctx)
}

/// `a(q) = ₂F₁[1/3,2/3;1 | c³/a³]`.
pub fn borwein_parametrization_check(q: &Float, ctx: &PrecisionContext) -> Result<ParamCheck> {
    parametrization(false, q, ctx)
}

/// `q dα/dq` by central differences with step `10^(-working/3)` against
/// `α(1-α) F²(α)`.
fn jacobian(jacobi: bool, q: &Float, ctx: &PrecisionContext) -> Result<ParamCheck> {
    let prec = ctx.bits();
    let h = crate::precision::pow10(-(ctx.working_digits as i32) / 3, prec);
    let qp = Float::with_val(prec, q + &h);
    let qm = Float::with_val(prec, q - &h);
    let (ap, _) = modulus(jacobi, &log_nome(&qp, prec));
    let (am, _) = modulus(jacobi, &log_nome(&qm, prec));
    let deriv = Float::with_val(prec, &ap - &am) / Float::with_val(prec, &h * 2u32);
    let lhs = Float::with_val(prec, q * &deriv);
    let (alpha, w) = modulus(jacobi, &log_nome(q, prec));
    let f = hyp(jacobi, prec)?.eval(&alpha, &w)?;
    let rhs = Float::with_val(prec, &alpha * &w) * f.square();
    Ok(ParamCheck { q: q.to_f64(), agreed_digits: agreed_digits(&lhs, &rhs), lhs: RealValue::new(lhs, ctx), rhs: RealValue::new(rhs, ctx) })
}

/// `q dα/dq = α(1-α)₂F₁²[1/2,1/2;1|α]`.
pub fn jacobi_jacobian_check(q: &Float, ctx: &PrecisionContext) -> Result<ParamCheck> {
    jacobian(true, q, ctx)
}

/// `q dα/dq = α(1-α)₂F₁²[1/3,2/3;1|α]`.
pub fn borwein_jacobian_check(q: &Float, ctx: &PrecisionContext) -> Result<ParamCheck> {
    jacobian(false, q, ctx)
}

/// `θ₂θ₃⁴θ₄ = θ₂θ₄⁵ + θ₂⁵θ₄` at `q⁴`, exactly up to `order`.
pub fn remark_series_identity(order: usize) -> Result<bool> {
    let ord = Rational::from(order as u64);
    let t2 = theta_qexp(ThetaKind::Jacobi2, 4, &ord)?;
    let t3 = theta_qexp(ThetaKind::Jacobi3, 4, &ord)?;
    let t4 = theta_qexp(ThetaKind::Jacobi4, 4, &ord)?;
    let lhs = &(&t2 * &t3.pow(4)) * &t4;
    let rhs = &(&t2 * &t4.pow(5)) + &(&t2.pow(5) * &t4);
    Ok(lhs.agrees_with(&rhs))
}

#[derive(Debug, Clone)]
pub struct SeriesOracle {
    pub value: RealValue,
    pub error_estimate: f64,
    pub terms_used: usize,
}

/// Terms of `3^{-4/3} Σ (1/3)ₙ(2/3)ₙ/(1)ₙ² Γ[3n+1/3, 2/3 / 3n+1]`.
pub fn series_iv_terms(n: usize, prec: u32) -> Vec<Float> {
    let third = Float::with_val(prec, 3).recip();
    let lead = Float::with_val(prec, 3).pow(Float::with_val(prec, -4) * &third);
    let g13 = gamma_f(&third);
    let g23 = gamma_f(&Float::with_val(prec, 1 - &third));
    let mut t = Float::with_val(prec, &lead * &g13) * &g23;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        out.push(t.clone());
        let k3 = Float::with_val(prec, 3 * k as u32);
        // (1/3+k)(2/3+k)/(k+1)²
        let kf = Float::with_val(prec, k as u32);
        t *= Float::with_val(prec, &kf + &third) * Float::with_val(prec, &kf + 2 * third.clone());
        t /= (k as u32 + 1) * (k as u32 + 1);
        // Γ(3k+3+1/3)/Γ(3k+1/3) over Γ(3k+4)/Γ(3k+1)
        for j in 0..3u32 {
            t *= Float::with_val(prec, &k3 + &third) + j;
            t /= Float::with_val(prec, &k3 + 1u32) + j;
        }
    }
    out
}

/// Accelerated value of the term-by-term series for entry T2.iv.
pub fn series_iv_oracle(ctx: &PrecisionContext) -> Result<SeriesOracle> {
    let prec = ctx.bits().max(256) * 2;
    let terms = series_iv_terms(48, prec);
    let acc = levin_u(&terms, prec)?;
    Ok(SeriesOracle {
        error_estimate: acc.error_estimate.to_f64(),
        value: RealValue::new(acc.value, ctx),
        terms_used: acc.terms_used,
    })
}
