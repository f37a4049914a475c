use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, RealValue};

use super::{HypEvalReport, HypParams, Method};

/// Hard cap on the number of series terms.
pub(crate) const MAX_TERMS: usize = 20_000_000;

#[derive(Debug, Clone)]
pub(crate) struct SeriesSum {
    pub value: Float,
    pub terms: usize,
    pub tail_bound: Float,
}

/// `Σ_n Π(a_i)_n / Π(b_j)_n · z^n / n!` at `prec` bits for `z ≥ 0`.
///
/// Stops once the geometric tail bound falls below `2^-prec · |sum|`. The
/// bound pairs `a_i` with `b_i` and the last upper parameter with the `n!`
/// denominator; each ratio `(a+m)/(b+m)` is monotone once `a+m, b+m > 0`,
/// so its supremum over `m ≥ n` is `max((a+n)/(b+n), 1)`.
pub(crate) fn sum_series(upper: &[Float], lower: &[Float], z: &Float, prec: u32) -> Result<SeriesSum> {
    debug_assert_eq!(upper.len(), lower.len() + 1);
    if z.is_zero() {
        return Ok(SeriesSum { value: Float::with_val(prec, 1), terms: 1, tail_bound: Float::new(prec) });
    }
    let zf = z.to_f64();
    let uf: Vec<f64> = upper.iter().map(Float::to_f64).collect();
    let mut lf: Vec<f64> = lower.iter().map(Float::to_f64).collect();
    lf.push(1.0);
    let n_min = uf.iter().chain(&lf).fold(0.0f64, |m, x| m.max(-x)).ceil() as usize + 1;
    let rel = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));

    let mut term = Float::with_val(prec, 1);
    let mut sum = Float::with_val(prec, 1);
    let mut n = 0usize;
    loop {
        // term <- t_{n+1}
        let nf = n as u32;
        for a in upper {
            term *= Float::with_val(prec, a + nf);
        }
        for b in lower {
            term /= Float::with_val(prec, b + nf);
        }
        term *= z;
        term /= nf + 1;
        n += 1;
        if term.is_zero() {
            return Ok(SeriesSum { value: sum, terms: n, tail_bound: Float::new(prec) });
        }
        sum += &term;
        if n >= n_min {
            let nn = n as f64;
            let r = uf.iter().zip(&lf).fold(zf, |acc, (a, b)| acc * ((a + nn) / (b + nn)).max(1.0));
            if r < 1.0 {
                let factor = r / (1.0 - r) * (1.0 + 1e-12);
                let bound = Float::with_val(prec, term.abs_ref()) * factor;
                if bound <= Float::with_val(prec, sum.abs_ref()) * &rel {
                    return Ok(SeriesSum { value: sum, terms: n + 1, tail_bound: bound });
                }
            }
        }
        if n >= MAX_TERMS {
            return Err(Error::Precision(format!("series did not converge in {MAX_TERMS} terms")));
        }
    }
}

/// Partial sum of the first `n` terms at `z = 1` and the last term included.
pub(crate) fn partial_sum_at_one(p: &HypParams, n: usize, prec: u32) -> (Float, Float, Vec<Float>) {
    let mut term = Float::with_val(prec, 1);
    let mut sum = Float::with_val(prec, 1);
    let mut terms = vec![term.clone()];
    for k in 1..n {
        let m = (k - 1) as u32;
        for a in &p.upper {
            term *= Float::with_val(prec, Rational::from(a + m));
        }
        for b in &p.lower {
            term /= Float::with_val(prec, Rational::from(b + m));
        }
        term /= m + 1;
        sum += &term;
        terms.push(term.clone());
    }
    (sum, term, terms)
}

/// Asymptotic tail estimate `2 |t_n| n / s` for a series at `z = 1` whose
/// terms decay like `n^(-1-s)`.
#[cfg(test)]
pub(crate) fn tail_estimate_at_one(last: &Float, n: usize, excess: &Rational) -> Float {
    let s = excess.to_f64();
    Float::with_val(last.prec(), last.abs_ref()) * (2.0 * n as f64 / s)
}

/// `_{p+1}F_p[upper; lower | z]` for `0 ≤ z < 1` by direct summation.
pub fn pfq_series(p: &HypParams, z: &Float, ctx: &PrecisionContext) -> Result<HypEvalReport> {
    let p = HypParams::new(p.upper.clone(), p.lower.clone())?;
    if !z.is_finite() || *z < 0 || *z >= 1 {
        return Err(Error::Domain(format!("series argument must lie in [0, 1), got {}", z.to_f64())));
    }
    let prec = ctx.bits();
    let upper: Vec<Float> = p.upper.iter().map(|a| Float::with_val(prec, a)).collect();
    let lower: Vec<Float> = p.lower.iter().map(|b| Float::with_val(prec, b)).collect();
    let s = sum_series(&upper, &lower, &Float::with_val(prec, z), prec)?;
    Ok(HypEvalReport {
        value: RealValue::new(s.value, ctx),
        method: Method::DirectSeries,
        terms_or_nodes: s.terms,
        tail_bound: RealValue::new(s.tail_bound, ctx),
    })
}
