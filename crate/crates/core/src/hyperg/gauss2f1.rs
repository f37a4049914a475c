//! `₂F₁(a, b; c; z)` on `[0, 1)` with both `z` and `w = 1 - z` supplied, so
//! arguments close to 1 keep full relative accuracy in `w`.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::rational::is_nonpositive_integer;
use crate::special::{euler_gamma, gamma_f, recip_gamma};

use super::series::sum_series;

const GUARD_BITS: u32 = 64;

#[derive(Debug, Clone)]
enum Near1 {
    /// `c - a - b` not an integer: two-term connection in `w`.
    TwoTerm { coef_a: Float, coef_b: Float, m: Float },
    /// `c - a - b = m ≥ 0` integer after an optional Euler transformation
    /// with exponent `shift`.
    Log { a: Float, b: Float, m: u32, shift: i64, finite_coef: Float, log_coef: Float, psi_a: Float, psi_b: Float, gamma_e: Float },
}

/// Evaluator for one parameter triple; Γ-constants are computed once.
#[derive(Debug, Clone)]
pub(crate) struct Hyp2F1 {
    a: Rational,
    b: Rational,
    c: Rational,
    prec: u32,
    work: u32,
    polynomial: bool,
    near1: Option<Near1>,
}

impl Hyp2F1 {
    pub fn new(a: &Rational, b: &Rational, c: &Rational, prec: u32) -> Result<Self> {
        if is_nonpositive_integer(c) {
            return Err(Error::Domain("2F1 lower parameter is a nonpositive integer".into()));
        }
        let polynomial = is_nonpositive_integer(a) || is_nonpositive_integer(b);
        let work = prec + GUARD_BITS;
        let mut h = Hyp2F1 { a: a.clone(), b: b.clone(), c: c.clone(), prec, work, polynomial, near1: None };
        if !polynomial {
            h.near1 = Some(h.connection()?);
        }
        Ok(h)
    }

    fn connection(&self) -> Result<Near1> {
        let work = self.work;
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let m = Rational::from(c - a) - b;
        if *m.denom() != 1 {
            // extra bits for cancellation when m is close to an integer
            let dist = (&m - m.clone().round()).abs().to_f64().max(1e-300);
            let work = work + (-dist.log2()).max(0.0) as u32;
            let gc = gamma_f(&Float::with_val(work, c));
            let coef_a = Float::with_val(work, &gc * gamma_f(&Float::with_val(work, &m)))
                * recip_gamma(&Rational::from(c - a), work)
                * recip_gamma(&Rational::from(c - b), work);
            let coef_b = gc * gamma_f(&Float::with_val(work, -m.clone()))
                * recip_gamma(a, work)
                * recip_gamma(b, work);
            return Ok(Near1::TwoTerm { coef_a, coef_b, m: Float::with_val(work, &m) });
        }
        let mi = m.numer().to_i64().ok_or_else(|| Error::Domain("parameter out of range".into()))?;
        let (a2, b2, mm, shift) = if mi >= 0 {
            (a.clone(), b.clone(), mi as u32, 0)
        } else {
            (Rational::from(c - a), Rational::from(c - b), (-mi) as u32, mi)
        };
        let am = Rational::from(&a2 + mm);
        let bm = Rational::from(&b2 + mm);
        let gc = gamma_f(&Float::with_val(work, c));
        let finite_coef = Float::with_val(work, &gc * recip_gamma(&am, work)) * recip_gamma(&bm, work);
        let log_coef = gc * recip_gamma(&a2, work) * recip_gamma(&b2, work);
        let psi = |x: &Rational| {
            if is_nonpositive_integer(x) {
                Float::new(work)
            } else {
                Float::with_val(work, Float::with_val(work, x).digamma_ref())
            }
        };
        Ok(Near1::Log {
            psi_a: psi(&am),
            psi_b: psi(&bm),
            a: Float::with_val(work, &a2),
            b: Float::with_val(work, &b2),
            m: mm,
            shift,
            finite_coef,
            log_coef,
            gamma_e: euler_gamma(work),
        })
    }

    /// Value at `z` with `w = 1 - z`; both in `[0, 1]`, `z < 1` unless the
    /// series converges at 1.
    pub fn eval(&self, z: &Float, w: &Float) -> Result<Float> {
        let work = self.work;
        let direct = |a: &Rational, b: &Rational, c: &Rational, x: &Float| -> Result<Float> {
            let up = [Float::with_val(work, a), Float::with_val(work, b)];
            let lo = [Float::with_val(work, c)];
            Ok(sum_series(&up, &lo, x, work)?.value)
        };
        let out = if self.polynomial || *z <= 0.5 {
            direct(&self.a, &self.b, &self.c, z)?
        } else {
            match self.near1.as_ref().expect("connection prepared") {
                Near1::TwoTerm { coef_a, coef_b, m } => {
                    let one = Rational::from(1);
                    let m_r = Rational::from(&self.c - &self.a) - &self.b;
                    let f1 = direct(&self.a, &self.b, &(Rational::from(&one - &m_r)), w)?;
                    let ca = Rational::from(&self.c - &self.a);
                    let cb = Rational::from(&self.c - &self.b);
                    let f2 = direct(&ca, &cb, &(one + m_r), w)?;
                    let wm = if w.is_zero() {
                        if *m < 0 {
                            return Err(Error::Domain("2F1 diverges at z = 1".into()));
                        }
                        Float::new(work)
                    } else {
                        Float::with_val(work, w.pow(m))
                    };
                    Float::with_val(work, coef_a * &f1) + Float::with_val(work, coef_b * &wm) * f2
                }
                Near1::Log { a, b, m, shift, finite_coef, log_coef, psi_a, psi_b, gamma_e } => {
                    let v = log_case(a, b, *m, w, finite_coef, log_coef, psi_a, psi_b, gamma_e, work)?;
                    if *shift != 0 {
                        v * Float::with_val(work, w.pow(*shift as i32))
                    } else {
                        v
                    }
                }
            }
        };
        Ok(Float::with_val(self.prec, out))
    }
}

/// Integer excess `m ≥ 0`:
/// `F = Γ(c) { Σ_{k<m} (a)_k (b)_k (m-k-1)!/k! (z-1)^k / (Γ(a+m)Γ(b+m))
///      - (z-1)^m/(Γ(a)Γ(b)) Σ_k (a+m)_k (b+m)_k / (k! (k+m)!) w^k
///        [ln w - ψ(k+1) - ψ(k+m+1) + ψ(a+m+k) + ψ(b+m+k)] }`.
#[allow(clippy::too_many_arguments)]
fn log_case(
    a: &Float,
    b: &Float,
    m: u32,
    w: &Float,
    finite_coef: &Float,
    log_coef: &Float,
    psi_a: &Float,
    psi_b: &Float,
    gamma_e: &Float,
    work: u32,
) -> Result<Float> {
    let neg_w = Float::with_val(work, -w);
    let mut finite = Float::new(work);
    if m > 0 && !finite_coef.is_zero() {
        let mut poch = Float::with_val(work, 1);
        let mut pw = Float::with_val(work, 1);
        for k in 0..m {
            let fact = Integer::from(Integer::factorial(m - k - 1));
            let kfact = Integer::from(Integer::factorial(k));
            finite += Float::with_val(work, &poch * &pw) * fact / kfact;
            poch *= Float::with_val(work, a + k) * Float::with_val(work, b + k);
            pw *= &neg_w;
        }
        finite *= finite_coef;
    }
    if log_coef.is_zero() {
        return Ok(finite);
    }
    if w.is_zero() {
        if m == 0 {
            return Err(Error::Domain("2F1 diverges logarithmically at z = 1".into()));
        }
        return Ok(finite);
    }
    let ln_w = Float::with_val(work, w.ln_ref());
    let am = Float::with_val(work, a + m);
    let bm = Float::with_val(work, b + m);
    // ψ(k+1) = H_k - γ, ψ(k+m+1) = H_{k+m} - γ
    let mut h_k = Float::new(work);
    let mut h_km = Float::new(work);
    for j in 1..=m {
        h_km += Float::with_val(work, 1) / j;
    }
    let mut psi_ak = psi_a.clone();
    let mut psi_bk = psi_b.clone();
    let mut coef = Float::with_val(work, 1) / Integer::from(Integer::factorial(m));
    let mut sum = Float::new(work);
    let rel = Float::with_val(work, Float::i_exp(1, -(work as i32)));
    let k_min = (a.to_f64().abs() + b.to_f64().abs()) as u32 + m + 8;
    let mut small = 0;
    let mut k = 0u32;
    loop {
        let bracket = Float::with_val(work, &ln_w - &h_k) - &h_km + &psi_ak + &psi_bk + gamma_e + gamma_e;
        let term = Float::with_val(work, &coef * &bracket);
        sum += &term;
        if k > k_min && Float::with_val(work, term.abs_ref()) <= Float::with_val(work, sum.abs_ref()) * &rel {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
        if k as usize > super::series::MAX_TERMS {
            return Err(Error::Precision("2F1 log series did not converge".into()));
        }
        let amk = Float::with_val(work, &am + k);
        let bmk = Float::with_val(work, &bm + k);
        psi_ak += Float::with_val(work, amk.recip_ref());
        psi_bk += Float::with_val(work, bmk.recip_ref());
        coef *= amk * bmk;
        coef *= w;
        coef /= (k + 1) * (k + m + 1);
        k += 1;
        h_k += Float::with_val(work, 1) / k;
        h_km += Float::with_val(work, 1) / (k + m);
    }
    let mut second = sum * log_coef;
    second *= Float::with_val(work, neg_w.pow(m));
    Ok(finite - second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::agreed_digits;
    use crate::rational::rat;

    const PREC: u32 = 200;

    fn direct(a: &Rational, b: &Rational, c: &Rational, z: f64) -> Float {
        let up = [Float::with_val(PREC + 64, a), Float::with_val(PREC + 64, b)];
        let lo = [Float::with_val(PREC + 64, c)];
        sum_series(&up, &lo, &Float::with_val(PREC + 64, z), PREC + 64).unwrap().value
    }

    #[test]
    fn connection_matches_direct_series() {
        let triples = [
            (rat(1, 3), rat(2, 3), rat(1, 1)),  // m = 0
            (rat(1, 2), rat(1, 2), rat(2, 1)),  // m = 1
            (rat(1, 4), rat(3, 4), rat(3, 1)),  // m = 2
            (rat(1, 2), rat(1, 2), rat(1, 4)),  // m non-integer, negative
            (rat(1, 2), rat(3, 2), rat(1, 1)),  // m = -1
            (rat(3, 2), rat(3, 2), rat(1, 1)),  // m = -2
            (rat(1, 4), rat(1, 2), rat(5, 7)),  // m non-integer, positive
            (rat(2, 1), rat(1, 3), rat(7, 3)),  // integer a
        ];
        for (a, b, c) in triples {
            let h = Hyp2F1::new(&a, &b, &c, PREC).unwrap();
            for z in [0.55, 0.7, 0.9] {
                let zf = Float::with_val(PREC, z);
                let w = Float::with_val(PREC, 1 - Float::with_val(PREC, z));
                let got = h.eval(&zf, &w).unwrap();
                let want = direct(&a, &b, &c, z);
                assert!(agreed_digits(&got, &want) >= 50, "{a} {b} {c} at {z}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn gauss_limit_at_one() {
        // 2F1[1/2,1/2;2;1] = Γ(2)Γ(1)/Γ(3/2)² = 4/π
        let h = Hyp2F1::new(&rat(1, 2), &rat(1, 2), &rat(2, 1), PREC).unwrap();
        let v = h.eval(&Float::with_val(PREC, 1), &Float::new(PREC)).unwrap();
        let exact = Float::with_val(PREC, 4) / crate::special::pi(PREC);
        assert!(agreed_digits(&v, &exact) >= 55);
        let log = Hyp2F1::new(&rat(1, 2), &rat(1, 2), &rat(1, 1), PREC).unwrap();
        assert!(log.eval(&Float::with_val(PREC, 1), &Float::new(PREC)).is_err());
    }

    #[test]
    fn complete_elliptic_integral() {
        // K(k) = (π/2) 2F1[1/2,1/2;1;k²]; agm form K = π / (2 agm(1, k'))
        let h = Hyp2F1::new(&rat(1, 2), &rat(1, 2), &rat(1, 1), PREC).unwrap();
        let w = Float::with_val(PREC, Float::i_exp(1, -40));
        let z = Float::with_val(PREC, 1 - &w);
        let kp = Float::with_val(PREC, w.sqrt_ref());
        let agm = Float::with_val(PREC, Float::with_val(PREC, 1).agm_ref(&kp));
        let want = Float::with_val(PREC, 1) / agm;
        assert!(agreed_digits(&h.eval(&z, &w).unwrap(), &want) >= 55);
    }
}
