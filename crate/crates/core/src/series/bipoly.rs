use std::collections::BTreeMap;
use std::fmt;


use num_traits::{One, Zero};

use super::ring::{Coefficient, Rational};

/// Polynomial in the line grading `ε` and the vertex grading `g`.
///
/// Keys are `(deg_ε, deg_g)`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, eps: u32, g: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((eps, g), c);
        }
        Self { terms }
    }

    pub fn eps() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn g() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(iter: I) -> Self {
        let mut p = Self::default();
        for (key, c) in iter {
            p.add_term(key, &c);
        }
        p
    }

    pub fn add_term(&mut self, key: (u32, u32), c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, eps: u32, g: u32) -> Rational {
        self.terms.get(&(eps, g)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest ε-degree over all monomials; `None` for the zero polynomial.
    pub fn min_eps_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(e, _)| e).min()
    }

    pub fn min_g_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, g)| g).min()
    }

    pub fn max_eps_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(e, _)| e).max()
    }

    /// Drops every monomial with `deg_ε > eps_order` or `deg_g > g_order`.
    ///
    /// Those monomials span an ideal, so truncating before or after a ring
    /// operation gives the same result inside the rectangle.
    pub fn truncate(&self, eps_order: usize, g_order: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(&(e, g), _)| e as usize <= eps_order && g as usize <= g_order)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Sum of the monomials of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(&(e, g), _)| e + g == d)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Substitutes `ε = 1` and `g = 1`.
    pub fn evaluate_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }
}

impl Zero for BiPoly {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl std::ops::Add for BiPoly {
    type Output = BiPoly;

    fn add(mut self, rhs: BiPoly) -> BiPoly {
        Coefficient::add_assign(&mut self, &rhs);
        self
    }
}

impl std::ops::Mul for BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: BiPoly) -> BiPoly {
        Coefficient::mul(&self, &rhs)
    }
}

impl Coefficient for BiPoly {
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(*k, c);
        }
    }

    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, &-c);
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&(e1, g1), c1) in &self.terms {
            for (&(e2, g2), c2) in &other.terms {
                out.add_term((e1 + e2, g1 + g2), &(c1 * c2));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }

    fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * s)).collect(),
        }
    }
}

impl From<Rational> for BiPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(e, g), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            match e {
                0 => {}
                1 => f.write_str("*eps")?,
                _ => write!(f, "*eps^{e}")?,
            }
            match g {
                0 => {}
                1 => f.write_str("*g")?,
                _ => write!(f, "*g^{g}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn arb_bipoly() -> impl Strategy<Value = BiPoly> {
        proptest::collection::vec(((0u32..3, 0u32..3), -4i64..5, 1i64..4), 0..5).prop_map(|ts| {
            BiPoly::from_terms(ts.into_iter().map(|(k, n, d)| (k, r(n, d))))
        })
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = BiPoly::eps().add(&BiPoly::g());
        let q = p.sub(&BiPoly::g());
        assert_eq!(q, BiPoly::eps());
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.sub(&p).len(), 0);
    }

    #[test]
    fn product_and_display() {
        let p = BiPoly::eps().add(&BiPoly::constant(r(1, 2)));
        let sq = p.mul(&p);
        assert_eq!(sq.coeff(2, 0), r(1, 1));
        assert_eq!(sq.coeff(1, 0), r(1, 1));
        assert_eq!(sq.coeff(0, 0), r(1, 4));
        assert_eq!(sq.to_string(), "1/4 + 1*eps + 1*eps^2");
    }

    #[test]
    fn truncation_is_rectangular() {
        let p = BiPoly::from_terms([((0, 0), r(1, 1)), ((2, 1), r(3, 1)), ((1, 3), r(5, 1))]);
        let t = p.truncate(2, 2);
        assert_eq!(t.len(), 2);
        assert_eq!(t.coeff(1, 3), r(0, 1));
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_bipoly(), b in arb_bipoly(), c in arb_bipoly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
            prop_assert!(a.terms().all(|(_, v)| !v.is_zero()));
        }
    }
}
