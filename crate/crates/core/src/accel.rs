//! Levin u-transform for slowly convergent series.

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Accelerated {
    pub value: Float,
    /// Distance between the two best consecutive transforms.
    pub error_estimate: Float,
    pub terms_used: usize,
}

/// Levin u-transform of `Σ terms`, with `ω_n = (1 + n) a_n`.
///
/// Every transform order is formed from the leading terms and the order
/// whose estimate moved least from its predecessor is returned. The sums
/// run at `prec + 8 k` bits to absorb the alternating binomial weights.
pub fn levin_u(terms: &[Float], prec: u32) -> Result<Accelerated> {
    let n = terms.len();
    if n < 3 {
        return Err(Error::Domain("Levin transform needs at least three terms".into()));
    }
    if terms.iter().any(|t| t.is_zero()) {
        return Err(Error::Domain("Levin u-transform requires nonzero terms".into()));
    }
    let work = prec + 8 * n as u32 + 64;
    let mut partial = Vec::with_capacity(n);
    let mut acc = Float::new(work);
    for t in terms {
        acc += t;
        partial.push(acc.clone());
    }

    let mut best: Option<Accelerated> = None;
    let mut prev: Option<Float> = None;
    for k in 1..n {
        let mut num = Float::new(work);
        let mut den = Float::new(work);
        for j in 0..=k {
            let binom = Integer::from(Integer::binomial_u(k as u32, j as u32));
            // (1 + j)^(k-2)
            let base = Float::with_val(work, 1 + j as u32);
            let pw = base.pow(k as i32 - 2);
            let mut w = Float::with_val(work, &binom) * pw / &terms[j];
            if j % 2 == 1 {
                w = -w;
            }
            num += Float::with_val(work, &w * &partial[j]);
            den += w;
        }
        let est = Float::with_val(work, &num / &den);
        if let Some(p) = &prev {
            let err = Float::with_val(work, &est - p).abs();
            let better = best.as_ref().is_none_or(|b| err < b.error_estimate);
            if better && err.is_finite() {
                best = Some(Accelerated {
                    value: Float::with_val(prec, &est),
                    error_estimate: Float::with_val(prec, &err),
                    terms_used: k + 1,
                });
            }
        }
        prev = Some(est);
    }
    best.ok_or_else(|| Error::Precision("Levin transform produced no finite estimate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::agreed_digits;
    use crate::special::pi;

    #[test]
    fn basel_sum() {
        let prec = 200;
        let terms: Vec<Float> =
            (1..=40u32).map(|n| Float::with_val(prec, 1) / Float::with_val(prec, n * n)).collect();
        let r = levin_u(&terms, prec).unwrap();
        let exact = pi(prec).square() / 6u32;
        assert!(agreed_digits(&r.value, &exact) >= 25, "{}", r.value);
    }

    #[test]
    fn alternating_log_two() {
        let prec = 200;
        let terms: Vec<Float> = (1..=30i32)
            .map(|n| Float::with_val(prec, if n % 2 == 1 { 1 } else { -1 }) / n)
            .collect();
        let r = levin_u(&terms, prec).unwrap();
        let exact = Float::with_val(prec, 2).ln();
        assert!(agreed_digits(&r.value, &exact) >= 30);
    }

    #[test]
    fn rejects_short_input() {
        assert!(levin_u(&[Float::with_val(53, 1)], 53).is_err());
    }
}
