//! Numeric theta values on `0 < q < 1`.
//!
//! Everything is driven by `log q` rather than `q`, so arguments that sit
//! astronomically close to 1 (the Mellin integrand near `t = 0`) never
//! lose precision and tiny factors underflow cleanly to zero.

use rug::ops::Pow;
use rug::Float;

use super::{ThetaKind, ThetaProductForm};
use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, RealValue};
use crate::special::pi;

/// Terms `exp(x)` with `x` below this (in units of the precision) are
/// negligible against an O(1) partial sum.
fn cutoff(prec: u32) -> f64 {
    -(f64::from(prec) * std::f64::consts::LN_2 + 20.0)
}

/// Direct defining sums; fast once `log_q <= -π`.
fn jacobi_direct(kind: ThetaKind, log_q: &Float) -> Float {
    let prec = log_q.prec();
    let lq = log_q.to_f64();
    let stop = cutoff(prec);
    match kind {
        ThetaKind::Jacobi3 | ThetaKind::Jacobi4 => {
            let mut sum = Float::with_val(prec, 0);
            let mut n: u64 = 1;
            while (n * n) as f64 * lq > stop {
                let term = Float::with_val(prec, log_q * (n * n)).exp();
                if kind == ThetaKind::Jacobi4 && n % 2 == 1 {
                    sum -= term;
                } else {
                    sum += term;
                }
                n += 1;
            }
            sum * 2u32 + 1u32
        }
        ThetaKind::Jacobi2 => {
            // 2 q^{1/4} Σ_{n>=0} q^{n(n+1)}
            let mut sum = Float::with_val(prec, 1);
            let mut n: u64 = 1;
            while (n * (n + 1)) as f64 * lq > stop {
                sum += Float::with_val(prec, log_q * (n * (n + 1))).exp();
                n += 1;
            }
            let lead = Float::with_val(prec, log_q / 4u32).exp();
            sum * lead * 2u32
        }
        _ => unreachable!("jacobi_direct called with a Borwein kind"),
    }
}

/// Jacobi theta at `q = exp(log_q)`. With `q = e^{-πt}` and `t < 1` the
/// modular transformations `θ₃ ↔ θ₃`, `θ₄ ↔ θ₂` (weight `t^{-1/2}`) move
/// the evaluation to `e^{-π/t}`.
fn jacobi(kind: ThetaKind, log_q: &Float) -> Float {
    let prec = log_q.prec();
    let p = pi(prec);
    let t = Float::with_val(prec, -log_q) / &p;
    if t >= 1 {
        return jacobi_direct(kind, log_q);
    }
    let dual = match kind {
        ThetaKind::Jacobi2 => ThetaKind::Jacobi4,
        ThetaKind::Jacobi3 => ThetaKind::Jacobi3,
        ThetaKind::Jacobi4 => ThetaKind::Jacobi2,
        _ => unreachable!(),
    };
    let log_dual = -p / &t;
    jacobi_direct(dual, &log_dual) / t.sqrt()
}

/// `Σ_{n∈ℤ} (-1)^n q^{n(3n-1)/2}` for small `q`.
fn pentagonal_sum(log_q: &Float) -> Float {
    let prec = log_q.prec();
    let lq = log_q.to_f64();
    let stop = cutoff(prec);
    let mut sum = Float::with_val(prec, 1);
    let mut n: u64 = 1;
    while (n * (3 * n - 1) / 2) as f64 * lq > stop {
        let a = Float::with_val(prec, log_q * (n * (3 * n - 1) / 2)).exp();
        let b = Float::with_val(prec, log_q * (n * (3 * n + 1) / 2)).exp();
        if n % 2 == 1 {
            sum -= a + b;
        } else {
            sum += a + b;
        }
        n += 1;
    }
    sum
}

/// `log η(q)` with `η(q) = q^{1/24} ∏(1 - qⁿ)`, split as `(lead, rest)`.
/// For `q = e^{-2πy}`, `y < 1`, uses `η(e^{-2πy}) = y^{-1/2} η(e^{-2π/y})`
/// and `lead = -π/(12y)` is returned as `None` so callers can cancel it
/// exactly; otherwise `lead = log_q/24`.
fn log_eta_parts(log_q: &Float) -> (Option<Float>, Float) {
    let prec = log_q.prec();
    let two_pi = pi(prec) * 2u32;
    let y = Float::with_val(prec, -log_q) / &two_pi;
    if y >= 1 {
        return (Some(Float::with_val(prec, log_q / 24u32)), pentagonal_sum(log_q).ln());
    }
    let log_dual = -two_pi / &y;
    let half_log_y = y.ln() / 2u32;
    (None, pentagonal_sum(&log_dual).ln() - half_log_y)
}

/// `-π/(12y)` with `y = -log_q/(2π)`, i.e. `π²/(6 log_q)`.
fn dual_lead(log_q: &Float) -> Float {
    let prec = log_q.prec();
    pi(prec).square() / Float::with_val(prec, log_q * 6u32)
}

/// Returns `(log b, log c - log 3)` where `b = η³(q)/η(q³)` and
/// `c = 3η³(q³)/η(q)`. Near `q = 1` both modular leads are of size
/// `1/|log q|` and cancel in `log c`, so they are combined symbolically.
fn borwein_logs(log_q: &Float) -> (Float, Float) {
    let prec = log_q.prec();
    let log_q3 = Float::with_val(prec, log_q * 3u32);
    let (l1, r1) = log_eta_parts(log_q);
    let (l3, r3) = log_eta_parts(&log_q3);
    let rest_b = Float::with_val(prec, &r1 * 3u32) - &r3;
    let rest_c = Float::with_val(prec, &r3 * 3u32) - &r1;
    match (l1, l3) {
        (None, None) => {
            // 3·lead(q) - lead(q³) = (π²/log q)(1/2 - 1/18); the c leads cancel
            let lead_b = dual_lead(log_q) * 3u32 - dual_lead(&log_q3);
            (lead_b + rest_b, rest_c)
        }
        (l1, l3) => {
            let l1 = l1.unwrap_or_else(|| dual_lead(log_q));
            let l3 = l3.unwrap_or_else(|| dual_lead(&log_q3));
            let lead_b = Float::with_val(prec, &l1 * 3u32) - &l3;
            let lead_c = Float::with_val(prec, &l3 * 3u32) - &l1;
            (lead_b + rest_b, lead_c + rest_c)
        }
    }
}

/// Cubic theta values via `b = η³(q)/η(q³)`, `c = 3η³(q³)/η(q)` and
/// `a = (b³ + c³)^{1/3}`; `b, c > 0` on `(0,1)` so the real cube root is
/// the right branch.
fn borwein(kind: ThetaKind, log_q: &Float) -> Float {
    let (log_b, log_c) = borwein_logs(log_q);
    let b = || log_b.clone().exp();
    let c = || log_c.clone().exp() * 3u32;
    match kind {
        ThetaKind::BorweinB => b(),
        ThetaKind::BorweinC => c(),
        ThetaKind::BorweinA => {
            let cubes = b().square() * b() + c().square() * c();
            cubes.cbrt()
        }
        _ => unreachable!(),
    }
}

/// Theta value at `q = exp(log_q)`, `log_q < 0`, at the precision of
/// `log_q`.
pub(crate) fn theta_from_log_nome(kind: ThetaKind, log_q: &Float) -> Float {
    if kind.is_jacobi() {
        jacobi(kind, log_q)
    } else {
        borwein(kind, log_q)
    }
}

fn check_nome(q: &Float) -> Result<()> {
    if !q.is_finite() || *q <= 0 || *q >= 1 {
        return Err(Error::Domain(format!("nome q = {} outside (0, 1)", q.to_f64())));
    }
    Ok(())
}

/// Theta series value at a real nome `0 < q < 1`.
pub fn theta_numeric(kind: ThetaKind, q: &Float, ctx: &PrecisionContext) -> Result<RealValue> {
    check_nome(q)?;
    let log_q = Float::with_val(ctx.bits(), q.ln_ref());
    Ok(RealValue::new(theta_from_log_nome(kind, &log_q), ctx))
}

/// `prefactor · ∏ kind(q^scale)^exponent` at `q = exp(log_q)`.
pub(crate) fn form_from_log_nome(form: &ThetaProductForm, log_q: &Float) -> Float {
    let prec = log_q.prec();
    let mut acc = Float::with_val(prec, &form.prefactor);
    for f in &form.factors {
        let lq = Float::with_val(prec, log_q * f.arg_scale);
        let v = theta_from_log_nome(f.kind, &lq);
        acc *= Float::with_val(prec, (&v).pow(f.exponent));
    }
    acc
}

pub fn form_numeric(form: &ThetaProductForm, q: &Float, ctx: &PrecisionContext) -> Result<RealValue> {
    check_nome(q)?;
    let log_q = Float::with_val(ctx.bits(), q.ln_ref());
    Ok(RealValue::new(form_from_log_nome(form, &log_q), ctx))
}
