//! `L(f, 1)` for the catalog forms: Mellin integral, α-pullback, tabulated
//! right-hand sides and entry verification.

mod checks;
mod mellin;
mod pullback;

use std::time::Instant;

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::catalog::{remark_constant, remark_form, CatalogEntry};
use crate::error::Result;
use crate::hyperg::{pfq_at_one, EvalMethod};
use crate::precision::{agreed_digits, PrecisionContext, RealValue};

pub use checks::{
    borwein_jacobian_check, borwein_parametrization_check, jacobi_jacobian_check, jacobi_parametrization_check,
    remark_series_identity, series_iv_oracle, series_iv_terms, ParamCheck, SeriesOracle,
};
pub use mellin::{coefficient_growth, l1_mellin, l1_mellin_split, MellinReport, MAX_TAIL_ORDER};
pub use pullback::{alpha_pullback, pullback_form, PullbackResult};

/// Tabulated value: constant, times `₃F₂(1)` when present.
pub fn rhs_eval(entry: &CatalogEntry, ctx: &PrecisionContext) -> Result<RealValue> {
    rhs_eval_with(entry, EvalMethod::Auto, ctx)
}

pub fn rhs_eval_with(entry: &CatalogEntry, method: EvalMethod, ctx: &PrecisionContext) -> Result<RealValue> {
    let prec = ctx.bits();
    let mut v = entry.rhs.constant.eval(prec)?;
    if let Some(h) = &entry.rhs.hyp {
        let r = if method == EvalMethod::Auto {
            pfq_at_one(h, ctx)?
        } else {
            crate::hyperg::pfq_at_one_with(h, method, ctx)?
        };
        v *= r.value.value();
    }
    Ok(RealValue::new(v, ctx))
}

#[derive(Debug, Clone)]
pub struct LValueReport {
    pub entry_id: String,
    pub lhs: RealValue,
    pub rhs: RealValue,
    pub pullback: Option<RealValue>,
    pub agreed_digits: u32,
    /// Agreement between the pullback value and the table, when computed.
    pub pullback_digits: Option<u32>,
    pub pass: bool,
    pub elapsed_ms_lhs: u128,
    pub elapsed_ms_rhs: u128,
}

/// JSON row for one verified entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LValueRecord {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pullback: Option<String>,
    pub agreed_digits: u32,
    pub pass: bool,
    pub elapsed_ms_lhs: u128,
    pub elapsed_ms_rhs: u128,
}

impl LValueReport {
    pub fn record(&self, digits: usize) -> LValueRecord {
        LValueRecord {
            id: self.entry_id.clone(),
            lhs: self.lhs.to_decimal(digits),
            rhs: self.rhs.to_decimal(digits),
            pullback: self.pullback.as_ref().map(|p| p.to_decimal(digits)),
            agreed_digits: self.agreed_digits,
            pass: self.pass,
            elapsed_ms_lhs: self.elapsed_ms_lhs,
            elapsed_ms_rhs: self.elapsed_ms_rhs,
        }
    }
}

/// Digits of agreement required for a pass.
pub fn pass_threshold(ctx: &PrecisionContext) -> u32 {
    ctx.target_digits.saturating_sub(5)
}

fn assemble(
    id: &str,
    lhs: RealValue,
    rhs: RealValue,
    pullback: Option<RealValue>,
    elapsed_ms_lhs: u128,
    elapsed_ms_rhs: u128,
    ctx: &PrecisionContext,
) -> LValueReport {
    let agreed = agreed_digits(lhs.value(), rhs.value()).min(ctx.working_digits);
    let pullback_digits = pullback.as_ref().map(|p| agreed_digits(p.value(), rhs.value()).min(ctx.working_digits));
    let need = pass_threshold(ctx);
    let pass = agreed >= need && pullback_digits.is_none_or(|d| d >= need);
    LValueReport {
        entry_id: id.to_string(),
        lhs,
        rhs,
        pullback,
        agreed_digits: agreed,
        pullback_digits,
        pass,
        elapsed_ms_lhs,
        elapsed_ms_rhs,
    }
}

/// Mellin value against the table, plus the pullback value when the entry
/// supports one.
pub fn verify_entry(entry: &CatalogEntry, ctx: &PrecisionContext) -> Result<LValueReport> {
    let start = Instant::now();
    let lhs = l1_mellin(&entry.form, ctx)?;
    let elapsed_lhs = start.elapsed().as_millis();
    let start = Instant::now();
    let rhs = rhs_eval(entry, ctx)?;
    let pullback = if entry.pullback_supported { Some(alpha_pullback(entry)?.eval(ctx)?) } else { None };
    let elapsed_rhs = start.elapsed().as_millis();
    Ok(assemble(entry.id, lhs, rhs, pullback, elapsed_lhs, elapsed_rhs, ctx))
}

/// The combined form `(1/2)θ₂θ₃⁴θ₄(q⁴)`: its Mellin value against
/// `Γ⁴(1/4)/(8√2π²)`, and as the pullback the sum of the table values of
/// entries iv and 16·xiv, which the contiguous relation collapses to the
/// same constant.
pub fn verify_remark(ctx: &PrecisionContext) -> Result<LValueReport> {
    let prec = ctx.bits();
    let start = Instant::now();
    let lhs = l1_mellin(&remark_form(), ctx)?;
    let elapsed_lhs = start.elapsed().as_millis();
    let start = Instant::now();
    let rhs = RealValue::new(remark_constant().eval(prec)?, ctx);
    let iv = rhs_eval(&crate::catalog::find_entry("T1.iv")?, ctx)?;
    let xiv = rhs_eval(&crate::catalog::find_entry("T1.xiv")?, ctx)?;
    let table_sum = Float::with_val(prec, iv.value() + Float::with_val(prec, xiv.value() * 16u32));
    let elapsed_rhs = start.elapsed().as_millis();
    let mut report = assemble("remark", lhs, rhs, Some(RealValue::new(table_sum, ctx)), elapsed_lhs, elapsed_rhs, ctx);
    report.pass &= remark_series_identity(MAX_TAIL_ORDER)?;
    Ok(report)
}

/// Default split point of the Mellin integral.
pub fn default_split() -> Rational {
    Rational::from(1)
}
