use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// A commutative ring containing the rationals, as far as series arithmetic
/// needs one.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync + Zero + One {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplication by a rational scalar.
    fn scale(&self, s: &Rational) -> Self;

    fn add_assign(&mut self, other: &Self) {
        *self = Coefficient::add(self, other);
    }
}

impl Coefficient for Rational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Rational) -> Self {
        self * s
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Parses `"p/q"` or `"p"` (decimal integers, optional sign) into a reduced
/// rational. Rejects a zero denominator.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reduces_and_normalizes_sign() {
        let r = parse_rational("4/-6").unwrap();
        assert_eq!(r, Rational::new((-2).into(), 3.into()));
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(parse_rational(" 7 ").unwrap().to_string(), "7");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
        assert!(parse_rational("1.5").is_none());
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
