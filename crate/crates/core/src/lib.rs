//! Isoperimetric profiles, extremal sets and quantitative deficit bounds for
//! symmetric log-convex probability measures on the real line.
//!
//! All set computations happen in quantile coordinates: a subset of ℝ is
//! pushed forward by the distribution function `F` to a subset of `[0, 1]`,
//! where measure is Lebesgue measure and the perimeter is a sum of `J` values
//! at endpoints.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod deficit;
pub mod extremals;
pub mod functional;
pub mod interval_sets;
pub mod measures;
pub mod numeric;
pub mod oracle;

pub use interval_sets::{QuantileSet, ReferenceShape};
pub use measures::{Measure, MeasureKind};

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}
