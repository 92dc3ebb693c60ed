use num_bigint::BigInt;
use num_traits::One;

use super::ring::{factorial, Coefficient, Rational};
use super::SeriesError;

/// Formal power series `c_0 + c_1 x + … + c_N x^N + O(x^{N+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<R> {
    coeffs: Vec<R>,
}

fn inverse_of(n: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n))
}

impl<R: Coefficient> TruncSeries<R> {
    /// Builds a series of the given order from leading coefficients; missing
    /// trailing coefficients are zero. More than `order + 1` coefficients is an
    /// error rather than a silent truncation.
    pub fn new(order: usize, mut coeffs: Vec<R>) -> Result<Self, SeriesError> {
        if coeffs.len() > order + 1 {
            return Err(SeriesError::Range {
                index: coeffs.len() - 1,
                order,
            });
        }
        coeffs.resize(order + 1, R::zero());
        Ok(Self { coeffs })
    }

    /// Like [`TruncSeries::new`] but keeps only the first `order + 1`
    /// coefficients of a possibly longer list.
    pub fn truncated_from(order: usize, coeffs: impl IntoIterator<Item = R>) -> Self {
        let mut coeffs: Vec<R> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, R::zero());
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![R::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, R::one())
    }

    pub fn constant(order: usize, c: R) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c·x^k`, or zero when `k` lies beyond the truncation order.
    pub fn monomial(order: usize, c: R, k: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The formal variable `x`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(order, R::one(), 1)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Option<&R> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn map<S: Coefficient>(&self, f: impl FnMut(&R) -> S) -> TruncSeries<S> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| Coefficient::add(a, b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| Coefficient::sub(a, b)).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|c| Coefficient::neg(c))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.map(|c| c.scale(s))
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j].add_assign(&Coefficient::mul(a, b));
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Formal exponential. Requires a zero constant term.
    ///
    /// Uses `e_0 = 1`, `n·e_n = Σ_{k=1}^{n} k·a_k·e_{n−k}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::Domain {
                op: "exp",
                reason: "constant term must be zero".into(),
            });
        }
        let n_max = self.order();
        // k·a_k, reused by every e_n
        let weighted: Vec<R> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a.scale(&Rational::from_integer(k.into())))
            .collect();
        let mut e = Vec::with_capacity(n_max + 1);
        e.push(R::one());
        for n in 1..=n_max {
            let mut acc = R::zero();
            for k in 1..=n {
                if !weighted[k].is_zero() && !e[n - k].is_zero() {
                    acc.add_assign(&Coefficient::mul(&weighted[k], &e[n - k]));
                }
            }
            e.push(acc.scale(&inverse_of(n)));
        }
        Ok(Self { coeffs: e })
    }

    /// Formal logarithm, inverse of [`TruncSeries::exp`]. Requires constant
    /// term one.
    ///
    /// Solves `n·a_n = Σ_{k=1}^{n} k·l_k·a_{n−k}` for `l_n`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::Domain {
                op: "log",
                reason: "constant term must be one".into(),
            });
        }
        let n_max = self.order();
        // k·l_k
        let mut weighted: Vec<R> = vec![R::zero(); n_max + 1];
        let mut l = vec![R::zero(); n_max + 1];
        for n in 1..=n_max {
            let mut acc = self.coeffs[n].scale(&Rational::from_integer(n.into()));
            for k in 1..n {
                if !weighted[k].is_zero() && !self.coeffs[n - k].is_zero() {
                    acc = Coefficient::sub(&acc, &Coefficient::mul(&weighted[k], &self.coeffs[n - k]));
                }
            }
            l[n] = acc.scale(&inverse_of(n));
            weighted[n] = acc;
        }
        Ok(Self { coeffs: l })
    }

    /// `outer(inner(x))`, truncated. The inner series must have zero constant
    /// term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::Domain {
                op: "compose",
                reason: "inner series must have zero constant term".into(),
            });
        }
        let n = self.order();
        // Horner: each multiplication by `inner` shifts by at least one power
        let mut acc = Self::constant(n, self.coeffs[n].clone());
        for k in (0..n).rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0].add_assign(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// `n!·c_n`: the exponential-generating-function coefficient.
    pub fn egf_coeff(&self, n: usize) -> Result<R, SeriesError> {
        let c = self.coeffs.get(n).ok_or(SeriesError::Range {
            index: n,
            order: self.order(),
        })?;
        Ok(c.scale(&Rational::from_integer(factorial(n))))
    }

    /// Series whose EGF coefficients are `values`: `c_n = values[n]/n!`.
    pub fn from_egf(order: usize, values: &[R]) -> Result<Self, SeriesError> {
        let coeffs = values
            .iter()
            .enumerate()
            .map(|(n, v)| v.scale(&Rational::new(BigInt::one(), factorial(n))))
            .collect();
        Self::new(order, coeffs)
    }
}
