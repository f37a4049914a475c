//! Working-precision bookkeeping and the tagged real type returned by the
//! public numeric routines.

use std::fmt;

use rug::float::Round;
use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Digits carried through a computation.
///
/// `working_digits` is the precision of intermediate arithmetic,
/// `target_digits` is what a result is claimed to, and the difference is
/// at least `guard_digits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionContext {
    pub working_digits: u32,
    pub target_digits: u32,
    pub guard_digits: u32,
}

impl PrecisionContext {
    pub const DEFAULT_GUARD: u32 = 15;
    pub const MIN_GUARD: u32 = 10;

    /// Context for `target` digits with the default guard.
    pub fn with_target(target: u32) -> Self {
        Self::new(target, Self::DEFAULT_GUARD)
    }

    pub fn new(target: u32, guard: u32) -> Self {
        let guard = guard.max(Self::MIN_GUARD);
        PrecisionContext {
            working_digits: target + guard,
            target_digits: target,
            guard_digits: guard,
        }
    }

    /// Same target and guard, more working digits.
    pub fn with_extra_working(&self, extra: u32) -> Self {
        PrecisionContext {
            working_digits: self.working_digits + extra,
            ..*self
        }
    }

    /// Binary precision for `rug::Float` at the working digits.
    pub fn bits(&self) -> u32 {
        (f64::from(self.working_digits) * LOG2_10).ceil() as u32 + 8
    }

    /// `10^-target_digits` at working precision.
    pub fn target_eps(&self) -> Float {
        pow10(-(self.target_digits as i32), self.bits())
    }

    /// `10^-working_digits` at working precision.
    pub fn working_eps(&self) -> Float {
        pow10(-(self.working_digits as i32), self.bits())
    }

    pub fn is_valid(&self) -> bool {
        self.guard_digits >= Self::MIN_GUARD
            && self.working_digits >= self.target_digits + self.guard_digits
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::with_target(30)
    }
}

pub(crate) fn pow10(exp: i32, prec: u32) -> Float {
    Float::with_val(prec, 10).pow(exp)
}

/// An arbitrary-precision real number together with the number of digits
/// it is claimed to.
#[derive(Debug, Clone, PartialEq)]
pub struct RealValue {
    value: Float,
    target_digits: u32,
}

impl RealValue {
    pub fn new(value: Float, ctx: &PrecisionContext) -> Self {
        RealValue {
            value,
            target_digits: ctx.target_digits,
        }
    }

    pub fn with_digits(value: Float, target_digits: u32) -> Self {
        RealValue {
            value,
            target_digits,
        }
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn into_inner(self) -> Float {
        self.value
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_decimal(&self.value, digits)
    }

    /// Number of leading decimal digits on which `self` and `other` agree,
    /// measured relative to `other`.
    pub fn agreed_digits(&self, other: &RealValue) -> u32 {
        agreed_digits(&self.value, &other.value)
    }
}

impl fmt::Display for RealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(self.target_digits as usize))
    }
}

/// Fixed-format decimal string with `digits` significant digits, e.g.
/// `0.19634954084936207740391521145`.
pub fn format_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp_round(10, Some(digits.max(1)), Round::Nearest);
    let exp = exp.unwrap_or(0);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    let mantissa = mantissa.trim_end_matches('0');
    let mantissa = if mantissa.is_empty() { "0" } else { mantissa };
    // value = 0.mantissa × 10^exp
    if exp <= 0 {
        out.push_str("0.");
        for _ in 0..(-exp) {
            out.push('0');
        }
        out.push_str(mantissa);
    } else if exp as usize >= mantissa.len() {
        out.push_str(mantissa);
        for _ in 0..(exp as usize - mantissa.len()) {
            out.push('0');
        }
    } else {
        let (int, frac) = mantissa.split_at(exp as usize);
        out.push_str(int);
        out.push('.');
        out.push_str(frac);
    }
    out
}

/// `floor(-log10(|a - b| / |b|))`, capped at the decimal precision of the
/// operands when they are equal.
pub fn agreed_digits(a: &Float, b: &Float) -> u32 {
    let prec = a.prec().max(b.prec());
    let cap = (f64::from(prec) / LOG2_10).floor() as u32;
    let diff = Float::with_val(prec, a - b).abs();
    if diff.is_zero() {
        return cap;
    }
    let scale = Float::with_val(prec, b.abs_ref());
    if scale.is_zero() {
        return 0;
    }
    let rel = diff / scale;
    let digits = -rel.log10().to_f64();
    if !digits.is_finite() || digits <= 0.0 {
        0
    } else {
        (digits.floor() as u32).min(cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_invariants() {
        let ctx = PrecisionContext::default();
        assert_eq!(ctx.target_digits, 30);
        assert_eq!(ctx.working_digits, 45);
        assert!(ctx.is_valid());
        assert!(PrecisionContext::new(20, 3).guard_digits >= 10);
    }

    #[test]
    fn decimal_formatting() {
        let x = Float::with_val(200, 1) / 8;
        assert_eq!(format_decimal(&x, 10), "0.125");
        let y = Float::with_val(200, 1234.5);
        assert_eq!(format_decimal(&y, 10), "1234.5");
        let z = Float::with_val(200, -0.001);
        assert!(format_decimal(&z, 5).starts_with("-0.001"));
        assert_eq!(format_decimal(&Float::with_val(64, 24), 5), "24");
    }

    #[test]
    fn agreement_digits() {
        let a = Float::with_val(200, 1);
        let b = Float::with_val(200, 1) + pow10(-12, 200) / 2;
        assert_eq!(agreed_digits(&a, &b), 12);
        assert_eq!(agreed_digits(&a, &a), 60);
    }
}
