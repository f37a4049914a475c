//! Double-exponential (tanh-sinh) quadrature on `[0, 1]`.
//!
//! Integrands receive both `t` and `1 - t` so endpoint singularities of the
//! form `(1 - t)^β` can be evaluated without cancellation.

use rayon::prelude::*;
use rug::Float;

use crate::error::{Error, Result};
use crate::precision::pow10;
use crate::special::pi;

#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: Float,
    /// Difference between the last two refinement levels.
    pub error_estimate: Float,
    pub levels: u32,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct TanhSinh {
    pub prec: u32,
    /// Relative tolerance `10^-tol_digits` between successive levels.
    pub tol_digits: u32,
    pub max_level: u32,
    /// Abscissae are taken from `|s| <= s_max`.
    pub s_max: f64,
}

impl TanhSinh {
    pub fn new(prec: u32, tol_digits: u32) -> Self {
        TanhSinh { prec, tol_digits, max_level: 11, s_max: 10.0 }
    }

    /// `∫₀¹ f(t) dt` with `f` called as `f(t, 1 - t)`.
    pub fn integrate<F>(&self, f: F) -> Result<QuadResult>
    where
        F: Fn(&Float, &Float) -> Result<Float> + Sync,
    {
        let prec = self.prec;
        let pi = pi(prec);
        let tol = pow10(-(self.tol_digits as i32), 64);
        let mut evaluations = 0usize;

        let mut sum = self.level_sum(&f, &pi, 0, &mut evaluations)?;
        let mut estimate = sum.clone();
        let mut last_diff: Option<Float> = None;
        for level in 1..=self.max_level {
            let h = Float::with_val(prec, Float::i_exp(1, -(level as i32)));
            let odd = self.level_sum(&f, &pi, level, &mut evaluations)?;
            sum += &odd;
            let next = Float::with_val(prec, &sum * &h);
            let diff = Float::with_val(prec, &next - &estimate).abs();
            estimate = next;
            let scale = Float::with_val(64, estimate.abs_ref()).max(&Float::with_val(64, 1e-300));
            let rel = Float::with_val(64, &diff / &scale);
            last_diff = Some(diff);
            if level >= 3 && rel <= tol {
                return Ok(QuadResult {
                    value: estimate,
                    error_estimate: last_diff.unwrap(),
                    levels: level,
                    evaluations,
                });
            }
        }
        Err(Error::Precision(format!(
            "tanh-sinh did not reach 1e-{} after {} levels (last difference {})",
            self.tol_digits,
            self.max_level,
            last_diff.map(|d| d.to_f64()).unwrap_or(f64::NAN)
        )))
    }

    /// Sum of weighted samples over the nodes new at `level` (all integer
    /// nodes at level 0, odd multiples of `2^-level` afterwards).
    fn level_sum<F>(&self, f: &F, pi: &Float, level: u32, evaluations: &mut usize) -> Result<Float>
    where
        F: Fn(&Float, &Float) -> Result<Float> + Sync,
    {
        let prec = self.prec;
        let (start, step) = if level == 0 { (0i64, 1i64) } else { (1, 2) };
        let kmax = (self.s_max * f64::from(1u32 << level)) as i64;
        let mut total = Float::new(prec);
        let threshold = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 16));

        let node = |k: i64| -> Result<Float> {
            let s = Float::with_val(prec, Float::i_exp(k as i32, -(level as i32)));
            let (t, u, w) = abscissa(&s, pi, prec);
            let fx = f(&t, &u)?;
            Ok(fx * w)
        };

        if start == 0 {
            total += node(0)?;
            *evaluations += 1;
        }
        const CHUNK: i64 = 16;
        for sign in [1i64, -1] {
            let mut k = if start == 0 { 1 } else { start };
            let mut small_run = 0;
            'side: while k <= kmax {
                let ks: Vec<i64> = (0..CHUNK).map(|j| k + j * step).filter(|&kk| kk <= kmax).collect();
                let vals: Vec<Result<Float>> = ks.par_iter().map(|&kk| node(sign * kk)).collect();
                for (kk, v) in ks.iter().zip(vals) {
                    let v = v?;
                    *evaluations += 1;
                    let s_abs = *kk as f64 / f64::from(1u32 << level);
                    let tiny = Float::with_val(prec, v.abs_ref()) <= Float::with_val(prec, total.abs_ref()) * &threshold;
                    total += &v;
                    if tiny && s_abs >= 2.0 {
                        small_run += 1;
                        if small_run >= 3 {
                            break 'side;
                        }
                    } else {
                        small_run = 0;
                    }
                }
                k += CHUNK * step;
            }
        }
        Ok(total)
    }
}

/// `(t, 1 - t, dt/ds)` at `s`.
fn abscissa(s: &Float, pi: &Float, prec: u32) -> (Float, Float, Float) {
    let sinh = Float::with_val(prec, s.sinh_ref());
    let cosh = Float::with_val(prec, s.cosh_ref());
    // e = exp(π |sinh s|), so the small side is 1/(1+e)
    let e = Float::with_val(prec, pi * Float::with_val(prec, sinh.abs_ref())).exp();
    let one_plus = Float::with_val(prec, &e + 1u32);
    let small = Float::with_val(prec, 1u32 / &one_plus);
    let large = Float::with_val(prec, &e / &one_plus);
    let w = Float::with_val(prec, &small * &large) * cosh * pi;
    if sinh >= 0 {
        (large, small, w)
    } else {
        (small, large, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::agreed_digits;
    use crate::special::gamma_f;
    use rug::ops::Pow;

    const PREC: u32 = 200;

    #[test]
    fn polynomial_and_log() {
        let q = TanhSinh::new(PREC, 50);
        let r = q.integrate(|t, _| Ok(Float::with_val(PREC, t * t))).unwrap();
        assert!(agreed_digits(&r.value, &(Float::with_val(PREC, 1) / 3u32)) >= 50);
        // ∫ log t = -1
        let r = q.integrate(|t, _| Ok(Float::with_val(PREC, t.ln_ref()))).unwrap();
        assert!(agreed_digits(&r.value, &Float::with_val(PREC, -1)) >= 50);
    }

    #[test]
    fn beta_integral_with_endpoint_singularities() {
        // B(1/4, 1/8) = Γ(1/4)Γ(1/8)/Γ(3/8)
        let q = TanhSinh::new(PREC, 45);
        let a = Float::with_val(PREC, -0.75);
        let b = Float::with_val(PREC, -0.875);
        let r = q
            .integrate(|t, u| Ok(Float::with_val(PREC, t.pow(&a)) * Float::with_val(PREC, u.pow(&b))))
            .unwrap();
        let g = |x: f64| gamma_f(&Float::with_val(PREC, x));
        let exact = g(0.25) * g(0.125) / g(0.375);
        assert!(agreed_digits(&r.value, &exact) >= 45, "{}", r.value);
    }

    #[test]
    fn errors_propagate() {
        let q = TanhSinh::new(64, 10);
        let r = q.integrate(|_, _| Err(Error::Domain("boom".into())));
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}
