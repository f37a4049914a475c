//! Exact q-series, theta products and high-precision evaluation of
//! `L(f, 1)` for weight-three theta products.

pub mod accel;
pub mod catalog;
pub mod error;
pub mod hyperg;
pub mod lvalue;
pub mod precision;
pub mod quad;
pub mod qseries;
pub mod rational;
pub mod special;
pub mod suites;
pub mod theta;

pub use catalog::{catalog, find_entry, CatalogEntry, Expr, RhsExpression};
pub use error::{Error, Result};
pub use hyperg::{HypEvalReport, HypParams};
pub use precision::{PrecisionContext, RealValue};
pub use qseries::QExpansion;
pub use special::GammaBracket;
pub use theta::{ThetaFactor, ThetaKind, ThetaProductForm};
