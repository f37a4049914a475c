use std::fmt;

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, is_nonpositive_integer};

/// Parameters of `_{p+1}F_p[upper; lower | z]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypParams {
    #[serde(with = "crate::rational::serde_vec")]
    pub upper: Vec<Rational>,
    #[serde(with = "crate::rational::serde_vec")]
    pub lower: Vec<Rational>,
}

impl HypParams {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>) -> Result<Self> {
        if upper.len() != lower.len() + 1 {
            return Err(Error::Domain(format!(
                "expected p+1 upper and p lower parameters, got {} and {}",
                upper.len(),
                lower.len()
            )));
        }
        if let Some(b) = lower.iter().find(|b| is_nonpositive_integer(b)) {
            return Err(Error::Domain(format!(
                "lower parameter {} is a nonpositive integer",
                fmt_rational(b)
            )));
        }
        Ok(HypParams { upper, lower })
    }

    /// `_3F_2` shorthand for literals; panics on malformed input.
    pub fn f32(upper: [Rational; 3], lower: [Rational; 2]) -> Self {
        Self::new(upper.to_vec(), lower.to_vec()).expect("valid 3F2 parameters")
    }

    pub fn f21(a: Rational, b: Rational, c: Rational) -> Self {
        Self::new(vec![a, b], vec![c]).expect("valid 2F1 parameters")
    }

    /// `p` in `_{p+1}F_p`.
    pub fn p(&self) -> usize {
        self.lower.len()
    }

    /// Parameter excess `Σ lower - Σ upper`. Terms at `z = 1` decay like
    /// `n^(-1-s)`, so the series converges there iff it is positive.
    pub fn excess(&self) -> Rational {
        let lower: Rational = self.lower.iter().fold(Rational::new(), |acc, b| acc + b);
        self.upper.iter().fold(lower, |acc, a| acc - a)
    }

    /// Some upper parameter is a nonpositive integer: the series is a
    /// polynomial.
    pub fn terminates(&self) -> bool {
        self.upper.iter().any(is_nonpositive_integer)
    }

    /// Cancel each upper parameter that equals a lower one.
    pub fn reduced(&self) -> HypParams {
        let mut upper = self.upper.clone();
        let mut lower = Vec::with_capacity(self.lower.len());
        for b in &self.lower {
            if let Some(pos) = upper.iter().position(|a| a == b) {
                upper.remove(pos);
            } else {
                lower.push(b.clone());
            }
        }
        HypParams { upper, lower }
    }
}

impl fmt::Display for HypParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Rational]| v.iter().map(fmt_rational).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{}F{}[{}; {}]",
            self.upper.len(),
            self.lower.len(),
            list(&self.upper),
            list(&self.lower)
        )
    }
}
