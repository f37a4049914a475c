use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::precision::{pow10, PrecisionContext, RealValue};
use crate::quad::TanhSinh;
use crate::qseries::QExpansion;
use crate::theta::{form_from_log_nome, form_qexp, ThetaProductForm};

/// Largest expansion order used for the tail sum.
pub const MAX_TAIL_ORDER: usize = 2000;

#[derive(Debug, Clone)]
pub struct MellinReport {
    pub value: RealValue,
    pub head: Float,
    pub tail: Float,
    /// Bound on the part of the tail beyond the summed coefficients.
    pub tail_bound: Float,
    pub tail_terms: usize,
    pub head_error: Float,
    pub head_nodes: usize,
}

/// `L(f, 1) = ∫₀^∞ f(e^{-t}) dt` split at `t = 1`.
pub fn l1_mellin(form: &ThetaProductForm, ctx: &PrecisionContext) -> Result<RealValue> {
    Ok(l1_mellin_split(form, &Rational::from(1), ctx)?.value)
}

/// Coefficient growth constant `K` with `|a_n| ≤ K n²`, from the
/// coefficients of `s` and doubled.
fn growth_constant(s: &QExpansion) -> Float {
    let d = s.denom();
    let mut k = Rational::new();
    for idx in 1..s.scaled_len() {
        let c = s.coeff_scaled(idx).abs();
        if c != 0 {
            let n = Rational::from((idx as u64, d));
            let r = c / Rational::from(&n * &n);
            if r > k {
                k = r;
            }
        }
    }
    Float::with_val(64, k * 2u32)
}

/// `L(f, 1)` with the head `∫₀^{t₀}` by tanh-sinh quadrature of the
/// numeric theta values and the tail `∫_{t₀}^∞` summed termwise,
/// `Σ aₙ e^{-n t₀} / n`, from the exact expansion.
pub fn l1_mellin_split(form: &ThetaProductForm, t0: &Rational, ctx: &PrecisionContext) -> Result<MellinReport> {
    if form.weight() != 3 {
        return Err(Error::Domain(format!("form has weight {}, expected 3", form.weight())));
    }
    if *t0 <= 0 {
        return Err(Error::Domain("split point must be positive".into()));
    }
    let prec = ctx.bits();
    let tol_digits = ctx.working_digits;
    let t0f = Float::with_val(prec, t0);

    let series = form_qexp(form, &Rational::from(MAX_TAIL_ORDER as u64));
    if series.coeff_scaled(0) != 0 {
        return Err(Error::Domain("form does not vanish at q = 0".into()));
    }
    let d = series.denom();
    let k = growth_constant(&series);
    // x = e^{-t₀/d} per scaled exponent step
    let x = Float::with_val(prec, -Float::with_val(prec, &t0f / d)).exp();
    let x64 = x.to_f64();
    let tol = pow10(-(tol_digits as i32), 64);

    let mut tail = Float::new(prec);
    let mut xn = Float::with_val(prec, 1);
    let mut used = 0usize;
    let mut bound = Float::with_val(64, f64::INFINITY);
    for idx in 1..series.scaled_len() {
        xn *= &x;
        let c = series.coeff_scaled(idx);
        if c != 0 {
            // a x^idx / (idx/d)
            let term = Float::with_val(prec, c * d) / idx as u32 * &xn;
            tail += term;
        }
        used = idx;
        // remaining ≤ K d Σ_{n>N} (n/d) x^n = K x^{N+1}((N+1) - N x)/(1-x)²
        let nn = idx as f64;
        let rem = Float::with_val(64, xn.to_f64() * x64) * (k.to_f64() * ((nn + 1.0) - nn * x64) / (1.0 - x64).powi(2));
        if idx >= 8 && rem <= Float::with_val(64, tail.abs_ref()) * &tol {
            bound = rem;
            break;
        }
    }
    if !bound.is_finite() {
        return Err(Error::OrderEscalation { order: MAX_TAIL_ORDER });
    }

    // head: t₀ ∫₀¹ f(e^{-t₀ u}) du
    let head_q = TanhSinh::new(prec, tol_digits).integrate(|u, _| {
        if u.is_zero() {
            return Ok(Float::new(prec));
        }
        let log_q = Float::with_val(prec, -Float::with_val(prec, &t0f * u));
        Ok(form_from_log_nome(form, &log_q))
    })?;
    let head = Float::with_val(prec, &head_q.value * &t0f);
    let head_error = Float::with_val(prec, &head_q.error_estimate * &t0f);
    let value = Float::with_val(prec, &head + &tail);
    Ok(MellinReport {
        value: RealValue::new(value, ctx),
        head,
        tail,
        tail_bound: Float::with_val(prec, &bound),
        tail_terms: used,
        head_error,
        head_nodes: head_q.evaluations,
    })
}

/// Coefficient sizes are polynomial: `|a_n| / n²` over the first
/// `MAX_TAIL_ORDER` exponents, as a sanity statistic for reports.
pub fn coefficient_growth(form: &ThetaProductForm) -> f64 {
    let s = form_qexp(form, &Rational::from(MAX_TAIL_ORDER as u64));
    growth_constant(&s).to_f64() / 2.0
}

