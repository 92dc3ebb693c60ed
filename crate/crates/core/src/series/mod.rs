//! Truncated formal power series with exact coefficients.
//!
//! A [`TruncSeries`] stores `c_0..=c_N` densely. The order `N` is fixed at
//! construction and every binary operation requires both operands to share
//! it. Coefficients live in any [`Coefficient`] ring; the two used here are
//! [`Rational`] and [`BiPoly`] (polynomials in the bookkeeping variables
//! `ε` and `g`).

mod bipoly;
mod ring;
mod trunc;

pub use bipoly::BiPoly;
pub use ring::{factorial, parse_rational, Coefficient, Rational};
pub use trunc::TruncSeries;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("{op}: {reason}")]
    Domain { op: &'static str, reason: String },
    #[error("coefficient index {index} exceeds truncation order {order}")]
    Range { index: usize, order: usize },
}
