use thiserror::Error;

/// Errors raised by the numeric and symbolic routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{kind} is not a {expected} theta series")]
    WrongFamily { kind: String, expected: &'static str },
    #[error("exponent {exponent} lies beyond the truncation order {order}")]
    Truncation { exponent: String, order: String },
    #[error("hypergeometric series diverges at z = 1 (parameter excess {excess} <= 0)")]
    Divergent { excess: String },
    #[error("Euler integral representation inapplicable: {0}")]
    RepresentationInapplicable(String),
    #[error("summation pattern mismatch: {0}")]
    Pattern(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precision shortfall: {0}")]
    Precision(String),
    #[error("q-expansion order {order} too small for the requested tail bound")]
    OrderEscalation { order: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
