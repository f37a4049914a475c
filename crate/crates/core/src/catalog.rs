//! The twenty theta products with their tabulated `L(f, 1)` values.
//!
//! Right-hand sides are kept symbolic (surds, `π`, `Γ` at rationals and an
//! optional `₃F₂(1)` factor) so a transcription can be audited term by
//! term and evaluated at any precision.

use std::fmt;

use rug::ops::Pow;
use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperg::HypParams;
use crate::rational::{fmt_rational, rat};
use crate::special::{gamma_f, pi};
use crate::theta::{ThetaFactor, ThetaKind, ThetaProductForm};

/// Closed-form constant built from rationals, `π`, `√`, rational powers
/// and `Γ` at positive rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Rat(Rational),
    Pi,
    Gamma(Rational),
    Sqrt(Box<Expr>),
    Pow(Box<Expr>, Rational),
    Mul(Vec<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Rat(Rational::from(n))
    }

    pub fn sqrt(e: Expr) -> Expr {
        Expr::Sqrt(Box::new(e))
    }

    pub fn pow(e: Expr, p: Rational) -> Expr {
        Expr::Pow(Box::new(e), p)
    }

    pub fn gamma_pow(x: Rational, k: i64) -> Expr {
        if k == 1 {
            Expr::Gamma(x)
        } else {
            Expr::pow(Expr::Gamma(x), Rational::from(k))
        }
    }

    pub fn div(n: Expr, d: Expr) -> Expr {
        Expr::Div(Box::new(n), Box::new(d))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, prec: u32) -> Result<Float> {
        Ok(match self {
            Expr::Rat(r) => Float::with_val(prec, r),
            Expr::Pi => pi(prec),
            Expr::Gamma(x) => {
                if *x <= 0 {
                    return Err(Error::Domain(format!("Γ({}) in constant", fmt_rational(x))));
                }
                gamma_f(&Float::with_val(prec, x))
            }
            Expr::Sqrt(e) => {
                let v = e.eval(prec)?;
                if v < 0 {
                    return Err(Error::Domain("square root of a negative constant".into()));
                }
                v.sqrt()
            }
            Expr::Pow(e, p) => {
                let v = e.eval(prec)?;
                if *p.denom() == 1 {
                    let k = p.numer().to_i32().expect("small integer power");
                    v.pow(k)
                } else {
                    v.pow(Float::with_val(prec, p))
                }
            }
            Expr::Mul(es) => {
                let mut acc = Float::with_val(prec, 1);
                for e in es {
                    acc *= e.eval(prec)?;
                }
                acc
            }
            Expr::Div(n, d) => n.eval(prec)? / d.eval(prec)?,
            Expr::Add(a, b) => a.eval(prec)? + b.eval(prec)?,
            Expr::Sub(a, b) => a.eval(prec)? - b.eval(prec)?,
        })
    }

    fn needs_parens(&self) -> bool {
        matches!(self, Expr::Add(..) | Expr::Sub(..) | Expr::Div(..))
            || matches!(self, Expr::Rat(r) if *r.denom() != 1 || *r < 0)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rat(r) => f.write_str(&fmt_rational(r)),
            Expr::Pi => f.write_str("π"),
            Expr::Gamma(x) => write!(f, "Γ({})", fmt_rational(x)),
            Expr::Sqrt(e) => write!(f, "sqrt({e})"),
            Expr::Pow(e, p) => {
                let exp = if *p.denom() == 1 {
                    fmt_rational(p)
                } else {
                    format!("({})", fmt_rational(p))
                };
                if e.needs_parens() || matches!(**e, Expr::Mul(_)) {
                    write!(f, "({e})^{exp}")
                } else {
                    write!(f, "{e}^{exp}")
                }
            }
            Expr::Mul(es) => {
                let parts: Vec<String> = es
                    .iter()
                    .map(|e| {
                        if e.needs_parens() {
                            format!("({e})")
                        } else {
                            e.to_string()
                        }
                    })
                    .collect();
                f.write_str(&parts.join("*"))
            }
            Expr::Div(n, d) => {
                let wrap = |e: &Expr| {
                    if e.needs_parens() || matches!(e, Expr::Mul(_)) {
                        format!("({e})")
                    } else {
                        e.to_string()
                    }
                };
                write!(f, "{}/{}", wrap(n), wrap(d))
            }
            Expr::Add(a, b) => write!(f, "{a} + {b}"),
            Expr::Sub(a, b) => write!(f, "{a} - {b}"),
        }
    }
}

/// Tabulated value: `constant` alone, or `constant · ₃F₂[hyp | 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhsExpression {
    pub constant: Expr,
    pub hyp: Option<HypParams>,
}

impl fmt::Display for RhsExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        if let Some(h) = &self.hyp {
            write!(f, " * {h}(1)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub form: ThetaProductForm,
    pub rhs: RhsExpression,
    /// Whether the α-substitution reduces the entry to one `₃F₂(1)`.
    pub pullback_supported: bool,
}

/// Serializable view of an entry.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogRecord {
    pub id: String,
    pub prefactor: String,
    pub factors: Vec<ThetaFactor>,
    pub weight: String,
    pub rhs: String,
    pub pullback_supported: bool,
}

impl CatalogEntry {
    pub fn record(&self) -> CatalogRecord {
        CatalogRecord {
            id: self.id.to_string(),
            prefactor: fmt_rational(&self.form.prefactor),
            factors: self.form.factors.clone(),
            weight: fmt_rational(&self.form.weight()),
            rhs: self.rhs.to_string(),
            pullback_supported: self.pullback_supported,
        }
    }
}

fn j2(scale: u32, e: u32) -> ThetaFactor {
    ThetaFactor::new(ThetaKind::Jacobi2, scale, e)
}
fn j3(scale: u32, e: u32) -> ThetaFactor {
    ThetaFactor::new(ThetaKind::Jacobi3, scale, e)
}
fn j4(scale: u32, e: u32) -> ThetaFactor {
    ThetaFactor::new(ThetaKind::Jacobi4, scale, e)
}
fn ca(scale: u32, e: u32) -> ThetaFactor {
    ThetaFactor::new(ThetaKind::BorweinA, scale, e)
}
fn cb(scale: u32, e: u32) -> ThetaFactor {
    ThetaFactor::new(ThetaKind::BorweinB, scale, e)
}
fn cc(scale: u32, e: u32) -> ThetaFactor {
    ThetaFactor::new(ThetaKind::BorweinC, scale, e)
}

fn q(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn f32(a: [(i64, i64); 3], b: [(i64, i64); 2]) -> Option<HypParams> {
    Some(HypParams::f32(
        a.map(|(n, d)| q(n, d)),
        b.map(|(n, d)| q(n, d)),
    ))
}

fn sqrt_pi() -> Expr {
    Expr::sqrt(Expr::Pi)
}
fn sqrt_2pi() -> Expr {
    Expr::sqrt(Expr::Mul(vec![Expr::int(2), Expr::Pi]))
}
fn sqrt2() -> Expr {
    Expr::sqrt(Expr::int(2))
}
fn sqrt3() -> Expr {
    Expr::sqrt(Expr::int(3))
}
/// `√(√2 ± 1)`
fn nested_surd(plus: bool) -> Expr {
    let inner = if plus {
        Expr::add(sqrt2(), Expr::int(1))
    } else {
        Expr::sub(sqrt2(), Expr::int(1))
    };
    Expr::sqrt(inner)
}

fn entry(
    id: &'static str,
    prefactor: Rational,
    factors: Vec<ThetaFactor>,
    constant: Expr,
    hyp: Option<HypParams>,
    pullback_supported: bool,
) -> CatalogEntry {
    CatalogEntry {
        id,
        form: ThetaProductForm::new(prefactor, factors),
        rhs: RhsExpression { constant, hyp },
        pullback_supported,
    }
}

/// All twenty entries, Jacobi products first.
pub fn catalog() -> Vec<CatalogEntry> {
    let g14 = || q(1, 4);
    let g34 = || q(3, 4);
    let half = [(1, 2), (1, 2)];
    vec![
        entry(
            "T1.i",
            q(1, 2),
            vec![j2(4, 1), j3(4, 4), j4(8, 1)],
            Expr::div(
                Expr::Mul(vec![nested_surd(true), Expr::gamma_pow(g14(), 2)]),
                Expr::Mul(vec![Expr::int(8), sqrt_pi()]),
            ),
            f32([(1, 4), half[0], half[1]], [(3, 8), (1, 1)]),
            true,
        ),
        entry(
            "T1.ii",
            q(1, 2),
            vec![j2(4, 1), j3(4, 3), j4(4, 2)],
            Expr::div(Expr::gamma_pow(g14(), 2), Expr::Mul(vec![Expr::int(8), sqrt_2pi()])),
            f32([(1, 4), half[0], half[1]], [(3, 4), (1, 1)]),
            true,
        ),
        entry(
            "T1.iii",
            q(1, 2),
            vec![j2(4, 1), j3(4, 2), j4(4, 3)],
            Expr::div(Expr::Pi, Expr::Mul(vec![Expr::int(4), sqrt2()])),
            f32([(1, 4), half[0], half[1]], [(1, 1), (1, 1)]),
            true,
        ),
        entry(
            "T1.iv",
            q(1, 2),
            vec![j2(4, 1), j4(4, 5)],
            Expr::div(Expr::gamma_pow(g14(), 2), Expr::Mul(vec![Expr::int(16), sqrt_pi()])),
            f32([(1, 4), half[0], half[1]], [(3, 2), (1, 1)]),
            true,
        ),
        entry(
            "T1.v",
            q(1, 2),
            vec![j2(4, 1), j4(8, 5)],
            Expr::div(
                Expr::Mul(vec![nested_surd(false), Expr::gamma_pow(g14(), 4)]),
                Expr::Mul(vec![Expr::int(16), Expr::pow(Expr::Pi, q(2, 1))]),
            ),
            None,
            true,
        ),
        entry(
            "T1.vi",
            q(1, 4),
            vec![j2(2, 2), j3(2, 3), j4(2, 1)],
            Expr::div(Expr::gamma_pow(g14(), 2), Expr::Mul(vec![Expr::int(8), sqrt_2pi()])),
            f32([(1, 2), (1, 2), (1, 2)], [(3, 4), (1, 1)]),
            true,
        ),
        entry(
            "T1.vii",
            q(1, 4),
            vec![j2(2, 2), j3(2, 1), j4(2, 3)],
            Expr::div(Expr::gamma_pow(g34(), 2), Expr::Mul(vec![Expr::int(2), sqrt_2pi()])),
            f32([(1, 2), (1, 2), (1, 2)], [(5, 4), (1, 1)]),
            true,
        ),
        entry(
            "T1.viii",
            q(1, 4),
            vec![j2(2, 2), j4(2, 4)],
            Expr::Rat(q(1, 4)),
            f32([(1, 2), (1, 2), (1, 2)], [(3, 2), (1, 1)]),
            true,
        ),
        entry(
            "T1.ix",
            q(1, 8),
            vec![j2(4, 3), j3(4, 2), j4(4, 1)],
            Expr::div(Expr::Pi, Expr::Mul(vec![Expr::int(16), sqrt2()])),
            f32([(3, 4), half[0], half[1]], [(1, 1), (1, 1)]),
            true,
        ),
        entry(
            "T1.x",
            q(1, 8),
            vec![j2(4, 3), j3(4, 1), j4(4, 2)],
            Expr::div(Expr::gamma_pow(g34(), 2), Expr::Mul(vec![Expr::int(8), sqrt_2pi()])),
            f32([(3, 4), half[0], half[1]], [(5, 4), (1, 1)]),
            true,
        ),
        entry(
            "T1.xi",
            q(1, 8),
            vec![j2(4, 3), j4(4, 3)],
            Expr::div(Expr::Pi, Expr::Mul(vec![Expr::int(32), sqrt2()])),
            None,
            true,
        ),
        entry(
            "T1.xii",
            q(1, 8),
            vec![j2(4, 3), j4(8, 3)],
            Expr::div(
                Expr::Mul(vec![
                    Expr::Gamma(q(1, 8)),
                    Expr::Gamma(q(1, 4)),
                    Expr::gamma_pow(q(3, 8), 3),
                ]),
                Expr::Mul(vec![Expr::int(128), Expr::pow(Expr::Pi, q(5, 2))]),
            ),
            None,
            true,
        ),
        entry(
            "T1.xiii",
            q(1, 16),
            vec![j2(1, 4), j4(1, 2)],
            Expr::div(Expr::Pi, Expr::int(16)),
            None,
            true,
        ),
        entry(
            "T1.xiv",
            q(1, 32),
            vec![j2(4, 5), j4(4, 1)],
            Expr::div(Expr::gamma_pow(g14(), 2), Expr::Mul(vec![Expr::int(256), sqrt_pi()])),
            f32([(5, 4), half[0], half[1]], [(3, 2), (1, 1)]),
            true,
        ),
        entry(
            "T1.xv",
            q(1, 32),
            vec![j2(4, 5), j4(8, 1)],
            Expr::div(
                Expr::Mul(vec![nested_surd(true), Expr::gamma_pow(g14(), 4)]),
                Expr::Mul(vec![Expr::int(128), Expr::pow(Expr::Pi, q(2, 1))]),
            ),
            None,
            true,
        ),
        entry(
            "T2.i",
            q(1, 3),
            vec![ca(3, 1), cc(3, 1), cb(3, 1)],
            Expr::div(
                Expr::gamma_pow(q(1, 3), 6),
                Expr::Mul(vec![Expr::int(8), sqrt3(), Expr::pow(Expr::Pi, q(3, 1))]),
            ),
            None,
            true,
        ),
        entry(
            "T2.ii",
            q(1, 3),
            vec![cc(3, 1), cb(3, 2)],
            Expr::div(
                Expr::Mul(vec![Expr::int(2), Expr::Pi]),
                Expr::Mul(vec![Expr::int(9), sqrt3()]),
            ),
            f32([(1, 3), (1, 3), (2, 3)], [(1, 1), (1, 1)]),
            true,
        ),
        entry(
            "T2.iii",
            q(1, 9),
            vec![cc(3, 2), cb(3, 1)],
            Expr::div(
                Expr::Mul(vec![Expr::int(2), Expr::Pi]),
                Expr::Mul(vec![Expr::int(27), sqrt3()]),
            ),
            f32([(1, 3), (2, 3), (2, 3)], [(1, 1), (1, 1)]),
            true,
        ),
        entry(
            "T2.iv",
            q(1, 3),
            vec![cc(3, 1), cb(9, 2)],
            Expr::div(
                Expr::Mul(vec![Expr::int(2), Expr::Pi]),
                Expr::pow(Expr::int(3), q(11, 6)),
            ),
            f32([(1, 9), (4, 9), (7, 9)], [(1, 1), (1, 1)]),
            false,
        ),
        entry(
            "T2.v",
            q(1, 9),
            vec![cc(3, 2), cb(9, 1)],
            Expr::div(
                Expr::Mul(vec![Expr::int(2), Expr::Pi]),
                Expr::pow(Expr::int(3), q(13, 6)),
            ),
            f32([(2, 9), (5, 9), (8, 9)], [(1, 1), (1, 1)]),
            false,
        ),
    ]
}

/// Look up one entry by id (`"T1.xiii"`, `"T2.iv"`, ...).
pub fn find_entry(id: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

/// The combined form `(1/2) θ₂(q⁴) θ₃⁴(q⁴) θ₄(q⁴)` whose value is the sum
/// of entries iv and 16·xiv.
pub fn remark_form() -> ThetaProductForm {
    ThetaProductForm::new(q(1, 2), vec![j2(4, 1), j3(4, 4), j4(4, 1)])
}

/// `Γ⁴(1/4) / (8√2 π²)`.
pub fn remark_constant() -> Expr {
    Expr::div(
        Expr::gamma_pow(q(1, 4), 4),
        Expr::Mul(vec![Expr::int(8), sqrt2(), Expr::pow(Expr::Pi, q(2, 1))]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{agreed_digits, format_decimal};
    use crate::theta::form_qexp;

    #[test]
    fn twenty_entries_of_weight_three() {
        let cat = catalog();
        assert_eq!(cat.len(), 20);
        assert_eq!(cat.iter().filter(|e| e.id.starts_with("T1.")).count(), 15);
        for e in &cat {
            assert_eq!(e.form.weight(), 3, "{}", e.id);
            assert!(e.form.is_jacobi() || e.form.is_borwein());
        }
        let unsupported: Vec<_> = cat.iter().filter(|e| !e.pullback_supported).map(|e| e.id).collect();
        assert_eq!(unsupported, vec!["T2.iv", "T2.v"]);
    }

    #[test]
    fn leading_coefficient_is_one() {
        for e in catalog() {
            let s = form_qexp(&e.form, &rat(8, 1));
            let (_, c) = s.leading_term().expect("nonzero form");
            assert_eq!(c, 1, "{}", e.id);
        }
    }

    #[test]
    fn transcriptions_render() {
        let xiii = find_entry("T1.xiii").unwrap();
        assert_eq!(xiii.rhs.to_string(), "π/16");
        assert!(xiii.rhs.hyp.is_none());
        let iv = find_entry("T1.iv").unwrap();
        assert_eq!(iv.rhs.to_string(), "Γ(1/4)^2/(16*sqrt(π)) * 3F2[1/4,1/2,1/2; 3/2,1](1)");
        let v = find_entry("t2.v").unwrap();
        assert_eq!(v.rhs.to_string(), "(2*π)/3^(13/6) * 3F2[2/9,5/9,8/9; 1,1](1)");
        assert_eq!(
            find_entry("T1.i").unwrap().rhs.constant.to_string(),
            "(sqrt(sqrt(2) + 1)*Γ(1/4)^2)/(8*sqrt(π))"
        );
        assert!(matches!(find_entry("BOGUS"), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn pi_over_sixteen_digits() {
        let v = find_entry("T1.xiii").unwrap().rhs.constant.eval(200).unwrap();
        assert!(format_decimal(&v, 15).starts_with("0.19634954084936"));
    }

    #[test]
    fn nested_surd_is_positive_and_exact() {
        let prec = 256;
        let s = nested_surd(false).eval(prec).unwrap();
        let t = nested_surd(true).eval(prec).unwrap();
        // √(√2−1)·√(√2+1) = 1
        assert!(agreed_digits(&Float::with_val(prec, &s * &t), &Float::with_val(prec, 1)) >= 70);
    }

    #[test]
    fn records_serialize() {
        let r = find_entry("T1.v").unwrap().record();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"id\":\"T1.v\""));
        assert!(json.contains("\"prefactor\":\"1/2\""));
        assert!(json.contains("Jacobi4"));
    }
}
