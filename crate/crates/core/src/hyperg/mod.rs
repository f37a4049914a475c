//! Generalized hypergeometric functions `_{p+1}F_p` on `[0, 1]`.

mod euler;
mod gauss2f1;
mod identities;
mod params;
mod series;
mod summation;

use std::fmt;
use std::str::FromStr;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, RealValue};
use crate::rational::fmt_rational;

pub use euler::{accelerated_series_at_one, choose_pair, euler_integral_eval};
pub use identities::{contiguous_check, cubic_transform_check, Residual};
pub use params::HypParams;
pub use series::pfq_series;
pub use summation::{gauss_sum, watson_for, watson_sum};

pub(crate) use gauss2f1::Hyp2F1;
#[cfg(test)]
pub(crate) use series::{partial_sum_at_one, tail_estimate_at_one};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DirectSeries,
    EulerIntegral,
    AcceleratedSeries,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::DirectSeries => "direct-series",
            Method::EulerIntegral => "euler-integral",
            Method::AcceleratedSeries => "accelerated-series",
            Method::ClosedForm => "closed-form",
        })
    }
}

/// Method request for values at `z = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMethod {
    /// Euler integral, or a finite sum when the series terminates.
    #[default]
    Auto,
    Integral,
    /// Levin-accelerated partial sums; about 10 digits.
    Series,
    /// Gauss or Watson summation when the parameters have that shape.
    ClosedForm,
}

impl FromStr for EvalMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(EvalMethod::Auto),
            "integral" => Ok(EvalMethod::Integral),
            "series" => Ok(EvalMethod::Series),
            "closed" | "closed-form" => Ok(EvalMethod::ClosedForm),
            other => Err(Error::Parse(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct HypEvalReport {
    pub value: RealValue,
    pub method: Method,
    pub terms_or_nodes: usize,
    pub tail_bound: RealValue,
}

impl HypEvalReport {
    /// Whether the reported error bound is below `10^-digits · |value|`.
    pub fn within(&self, digits: u32) -> bool {
        let tol = crate::precision::pow10(-(digits as i32), 64);
        let lim = Float::with_val(64, self.value.value().abs_ref()) * tol;
        *self.tail_bound.value() <= lim
    }
}

/// JSON view of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypEvalRecord {
    pub params: String,
    pub z: String,
    pub value: String,
    pub method: Method,
    pub terms_or_nodes: usize,
    pub tail_bound: String,
}

impl HypEvalRecord {
    pub fn new(p: &HypParams, z: &str, r: &HypEvalReport, digits: usize) -> Self {
        HypEvalRecord {
            params: p.to_string(),
            z: z.to_string(),
            value: r.value.to_decimal(digits),
            method: r.method,
            terms_or_nodes: r.terms_or_nodes,
            tail_bound: format!("{:.3e}", r.tail_bound.to_f64()),
        }
    }
}

/// `_{p+1}F_p[upper; lower | 1]` by the default method.
pub fn pfq_at_one(p: &HypParams, ctx: &PrecisionContext) -> Result<HypEvalReport> {
    pfq_at_one_with(p, EvalMethod::Auto, ctx)
}

pub fn pfq_at_one_with(p: &HypParams, method: EvalMethod, ctx: &PrecisionContext) -> Result<HypEvalReport> {
    let p = HypParams::new(p.upper.clone(), p.lower.clone())?;
    let r = p.reduced();
    if r.terminates() {
        return euler::terminating_at_one(&r, ctx);
    }
    if r.excess() <= 0 {
        return Err(Error::Divergent { excess: fmt_rational(&r.excess()) });
    }
    match method {
        EvalMethod::Series => accelerated_series_at_one(&r, ctx),
        EvalMethod::ClosedForm => closed_form_at_one(&r, ctx),
        EvalMethod::Auto | EvalMethod::Integral => {
            if r.p() == 0 {
                // 1F0[a;;1] = 0 for a < 0
                return closed_form_at_one(&r, ctx);
            }
            euler_integral_eval(&r, &Float::with_val(ctx.bits(), 1), ctx)
        }
    }
}

fn closed_form_at_one(r: &HypParams, ctx: &PrecisionContext) -> Result<HypEvalReport> {
    let value = match r.p() {
        0 => RealValue::new(Float::new(ctx.bits()), ctx),
        1 => gauss_sum(&r.upper[0], &r.upper[1], &r.lower[0])?.eval(ctx)?,
        2 => watson_for(r)?.eval(ctx)?,
        _ => return Err(Error::Pattern(format!("no closed form known for {r}"))),
    };
    Ok(HypEvalReport {
        value,
        method: Method::ClosedForm,
        terms_or_nodes: 0,
        tail_bound: RealValue::new(Float::new(ctx.bits()), ctx),
    })
}
