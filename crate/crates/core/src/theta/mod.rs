//! Jacobi theta series `θ₂, θ₃, θ₄` and the Borwein cubic theta series
//! `a, b, c`: exact q-expansions, numeric evaluation on `0 < q < 1`, and
//! symbolic products of them.

mod numeric;
mod series;

use std::fmt;

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::rational::fmt_rational;

pub use numeric::{form_numeric, theta_numeric};
pub(crate) use numeric::{form_from_log_nome, theta_from_log_nome};
pub use series::{borwein_theta_qexp, form_qexp, jacobi_theta_qexp, theta_qexp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ThetaKind {
    Jacobi2,
    Jacobi3,
    Jacobi4,
    BorweinA,
    BorweinB,
    BorweinC,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 6] = [
        ThetaKind::Jacobi2,
        ThetaKind::Jacobi3,
        ThetaKind::Jacobi4,
        ThetaKind::BorweinA,
        ThetaKind::BorweinB,
        ThetaKind::BorweinC,
    ];

    pub fn is_jacobi(self) -> bool {
        matches!(self, ThetaKind::Jacobi2 | ThetaKind::Jacobi3 | ThetaKind::Jacobi4)
    }

    pub fn is_borwein(self) -> bool {
        !self.is_jacobi()
    }

    /// Modular weight: 1/2 for Jacobi series, 1 for the cubic ones.
    pub fn weight(self) -> Rational {
        if self.is_jacobi() {
            Rational::from((1, 2))
        } else {
            Rational::from(1)
        }
    }

    /// Short display name (`θ2`, `a`, ...).
    pub fn symbol(self) -> &'static str {
        match self {
            ThetaKind::Jacobi2 => "θ2",
            ThetaKind::Jacobi3 => "θ3",
            ThetaKind::Jacobi4 => "θ4",
            ThetaKind::BorweinA => "a",
            ThetaKind::BorweinB => "b",
            ThetaKind::BorweinC => "c",
        }
    }
}

impl fmt::Display for ThetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `kind(q^arg_scale)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaFactor {
    pub kind: ThetaKind,
    pub arg_scale: u32,
    pub exponent: u32,
}

impl ThetaFactor {
    pub const fn new(kind: ThetaKind, arg_scale: u32, exponent: u32) -> Self {
        ThetaFactor {
            kind,
            arg_scale,
            exponent,
        }
    }
}

impl fmt::Display for ThetaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.symbol())?;
        if self.exponent != 1 {
            write!(f, "^{}", self.exponent)?;
        }
        if self.arg_scale == 1 {
            f.write_str("(q)")
        } else {
            write!(f, "(q^{})", self.arg_scale)
        }
    }
}

/// `prefactor · ∏ factors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaProductForm {
    #[serde(with = "crate::rational::serde_one")]
    pub prefactor: Rational,
    pub factors: Vec<ThetaFactor>,
}

impl ThetaProductForm {
    pub fn new(prefactor: Rational, factors: Vec<ThetaFactor>) -> Self {
        ThetaProductForm { prefactor, factors }
    }

    pub fn weight(&self) -> Rational {
        self.factors
            .iter()
            .map(|f| f.kind.weight() * f.exponent)
            .fold(Rational::new(), |acc, w| acc + w)
    }

    pub fn is_jacobi(&self) -> bool {
        self.factors.iter().all(|f| f.kind.is_jacobi())
    }

    pub fn is_borwein(&self) -> bool {
        self.factors.iter().all(|f| f.kind.is_borwein())
    }
}

impl fmt::Display for ThetaProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", fmt_rational(&self.prefactor))?;
        for factor in &self.factors {
            write!(f, " {factor}")?;
        }
        Ok(())
    }
}
