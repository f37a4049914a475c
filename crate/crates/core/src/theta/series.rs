use rug::{Integer, Rational};

use super::{ThetaKind, ThetaProductForm};
use crate::error::{Error, Result};
use crate::qseries::QExpansion;

/// `scale·x < order` without leaving the rationals.
fn below(scale: u32, x: u64, order: &Rational) -> bool {
    *order > u64::from(scale) * x
}

/// Exact expansion of a Jacobi theta series at `q^scale`.
pub fn jacobi_theta_qexp(kind: ThetaKind, scale: u32, order: &Rational) -> Result<QExpansion> {
    if !kind.is_jacobi() {
        return Err(Error::WrongFamily {
            kind: kind.to_string(),
            expected: "Jacobi",
        });
    }
    assert!(scale >= 1, "argument scale must be positive");
    let series = match kind {
        ThetaKind::Jacobi3 | ThetaKind::Jacobi4 => {
            let mut terms = Vec::new();
            let mut n: u64 = 0;
            while below(scale, n * n, order) {
                let mag = if n == 0 { 1 } else { 2 };
                let sign = if kind == ThetaKind::Jacobi4 && n % 2 == 1 { -1 } else { 1 };
                terms.push(((scale as u64 * n * n) as usize, Integer::from(sign * mag)));
                n += 1;
            }
            QExpansion::from_integer_terms(1, order, terms)
        }
        ThetaKind::Jacobi2 => {
            // exponents scale·(n + 1/2)² = scale·(2n+1)²/4
            let quarter_order = Rational::from(order * 4u32);
            let mut terms = Vec::new();
            let mut odd: u64 = 1;
            while below(scale, odd * odd, &quarter_order) {
                terms.push(((scale as u64 * odd * odd) as usize, Integer::from(2)));
                odd += 2;
            }
            QExpansion::from_integer_terms(4, order, terms).normalized()
        }
        _ => unreachable!(),
    };
    Ok(series)
}

/// Exact expansion of a Borwein cubic theta series at `q^scale` by direct
/// enumeration of the hexagonal lattice.
pub fn borwein_theta_qexp(kind: ThetaKind, scale: u32, order: &Rational) -> Result<QExpansion> {
    if !kind.is_borwein() {
        return Err(Error::WrongFamily {
            kind: kind.to_string(),
            expected: "Borwein",
        });
    }
    assert!(scale >= 1, "argument scale must be positive");
    // n² + nm + m² >= 3/4 max(n², m²), likewise for the shifted lattice.
    let reach = order.to_f64() / f64::from(scale);
    let bound = ((4.0 * reach.max(0.0) / 3.0).sqrt()).floor() as i64 + 2;
    let series = match kind {
        ThetaKind::BorweinA | ThetaKind::BorweinB => {
            let len = (order.to_f64() / f64::from(scale)).ceil().max(0.0) as usize + 1;
            // counts[e][r]: lattice points of norm e with n - m ≡ r (mod 3)
            let mut counts = vec![[0i64; 3]; len];
            for n in -bound..=bound {
                for m in -bound..=bound {
                    let norm = n * n + n * m + m * m;
                    if (norm as usize) < len && below(scale, norm as u64, order) {
                        let r = (n - m).rem_euclid(3) as usize;
                        counts[norm as usize][r] += 1;
                    }
                }
            }
            let terms = counts.iter().enumerate().filter_map(|(e, c)| {
                let coeff = if kind == ThetaKind::BorweinA {
                    c[0] + c[1] + c[2]
                } else {
                    // Σ ω^{n-m}: classes 1 and 2 carry ω and ω² = conj(ω), and are
                    // equinumerous (swap n and m), so the sum is N₀ - N₁.
                    assert_eq!(c[1], c[2], "character sum must be real");
                    c[0] - c[1]
                };
                (coeff != 0).then(|| (e * scale as usize, Integer::from(coeff)))
            });
            QExpansion::from_integer_terms(1, order, terms.collect::<Vec<_>>())
        }
        ThetaKind::BorweinC => {
            // (n+1/3)² + (n+1/3)(m+1/3) + (m+1/3)² = n² + nm + m² + n + m + 1/3
            let third_order = Rational::from(order * 3u32);
            let mut terms = Vec::new();
            for n in -bound - 1..=bound + 1 {
                for m in -bound - 1..=bound + 1 {
                    let scaled = 3 * (n * n + n * m + m * m + n + m) + 1;
                    if below(scale, scaled as u64, &third_order) {
                        terms.push(((scale as i64 * scaled) as usize, Integer::from(1)));
                    }
                }
            }
            QExpansion::from_integer_terms(3, order, terms).normalized()
        }
        _ => unreachable!(),
    };
    Ok(series)
}

pub fn theta_qexp(kind: ThetaKind, scale: u32, order: &Rational) -> Result<QExpansion> {
    if kind.is_jacobi() {
        jacobi_theta_qexp(kind, scale, order)
    } else {
        borwein_theta_qexp(kind, scale, order)
    }
}

/// `prefactor · ∏ kind(q^scale)^exponent` as an exact truncated series.
pub fn form_qexp(form: &ThetaProductForm, order: &Rational) -> QExpansion {
    let mut acc = QExpansion::constant(form.prefactor.clone(), order);
    for factor in &form.factors {
        let base = theta_qexp(factor.kind, factor.arg_scale, order)
            .expect("factor kind matches its own family");
        acc = acc.mul(&base.pow(factor.exponent));
    }
    acc.normalized()
}
