//! Shared workloads for the criterion benches.

use combfield_core::series::{factorial, Rational, TruncSeries};

/// `e^x − 1` to the given order, the inner series of the Bell EGF.
pub fn exp_minus_one(order: usize) -> TruncSeries<Rational> {
    TruncSeries::from_fn(order, |k| {
        if k == 0 {
            Rational::from_integer(0.into())
        } else {
            Rational::new(1.into(), factorial(k))
        }
    })
}
