//! Partition functions of zero-dimensional field theories.
//!
//! For a model with line amplitudes `L_m` and vertex amplitudes `V_n` the
//! engine forms
//!
//! ```text
//! A(t) = exp(Σ_m L_m t^m / m!)      F(x) = exp(Σ_n V_n x^n / n!)
//! ```
//!
//! and evaluates `A(∂) F(x)` at `x = 0`. Since `∂^k/k!` applied to `F` and
//! evaluated at zero returns `[x^k] F`, this is the pairing
//! `Z = Σ_k k!·[t^k]A·[x^k]F`, truncated to a rectangle of `ε` and `g`
//! degrees.
//!
//! The connected generating function is `+ln Z`. The physics convention
//! `F = −ln Z` only flips signs, and connected counts are positive.

mod model;
mod model_file;
pub mod random;

pub use model::{
    builtin_model, AmplitudeFamily, BuiltinModel, Exponent, FinitenessMode, ModelSpec,
    TemplateMonomial,
};
pub use model_file::{model_from_json, model_to_json};

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::combinatorics::StirlingTable;
use crate::series::{factorial, BiPoly, Coefficient, Rational, SeriesError, TruncSeries};
use model::Grading;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QftError {
    #[error("divergent coefficient: {0}")]
    Finiteness(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Bivariate coefficient table of a generating function in `ε` and `g`,
/// truncated to `deg_ε ≤ eps_order`, `deg_g ≤ g_order`. Only nonzero
/// coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSeries {
    coefficients: BTreeMap<(usize, usize), Rational>,
    eps_order: usize,
    g_order: usize,
}

impl PartitionSeries {
    pub fn from_bipoly(p: &BiPoly, eps_order: usize, g_order: usize) -> Self {
        let coefficients = p
            .truncate(eps_order, g_order)
            .terms()
            .map(|(&(e, g), c)| ((e as usize, g as usize), c.clone()))
            .collect();
        Self {
            coefficients,
            eps_order,
            g_order,
        }
    }

    pub fn to_bipoly(&self) -> BiPoly {
        BiPoly::from_terms(
            self.coefficients
                .iter()
                .map(|(&(e, g), c)| ((e as u32, g as u32), c.clone())),
        )
    }

    pub fn eps_order(&self) -> usize {
        self.eps_order
    }

    pub fn g_order(&self) -> usize {
        self.g_order
    }

    /// `[ε^i g^j]`; zero if absent or outside the truncation rectangle.
    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coefficients
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.coefficients.iter()
    }

    /// `[ε^i]` as a polynomial in `g`, indexed by `g`-degree `0..=g_order`.
    pub fn eps_slice(&self, i: usize) -> Vec<Rational> {
        (0..=self.g_order).map(|j| self.coeff(i, j)).collect()
    }

    /// `n!·[ε^n]`, the labelled count per line-grading degree, as a
    /// polynomial in `g`.
    pub fn egf_eps_slice(&self, n: usize) -> Vec<Rational> {
        let f = Rational::from_integer(factorial(n));
        self.eps_slice(n).into_iter().map(|c| c * &f).collect()
    }

    /// Writes the table as a series in an auxiliary variable `s` that counts
    /// total degree, so univariate exp/log apply.
    fn by_total_degree(&self) -> TruncSeries<BiPoly> {
        let p = self.to_bipoly();
        let order = self.eps_order + self.g_order;
        TruncSeries::from_fn(order, |d| p.homogeneous_part(d as u32))
    }

    fn from_total_degree(s: &TruncSeries<BiPoly>, eps_order: usize, g_order: usize) -> Self {
        let sum = s
            .coeffs()
            .iter()
            .fold(BiPoly::zero(), |acc, c| acc.add(c));
        Self::from_bipoly(&sum, eps_order, g_order)
    }
}

/// Largest pairing index `K` that can contribute inside the `(N, J)`
/// rectangle.
pub fn pairing_bound(model: &ModelSpec, eps_order: usize, g_order: usize) -> Result<usize, QftError> {
    match model.mode() {
        FinitenessMode::LegsGraded => Ok(eps_order),
        FinitenessMode::FiniteSupport => {
            let from_lines = model
                .lines()
                .legs_per_degree(Grading::Eps)
                .map(|(legs, deg)| eps_order * legs / deg);
            let from_vertices = model
                .vertices()
                .legs_per_degree(Grading::G)
                .map(|(legs, deg)| g_order * legs / deg);
            match (from_lines, from_vertices) {
                (Some(a), Some(b)) => Ok(a.min(b)),
                (Some(a), None) | (None, Some(a)) => Ok(a),
                (None, None) => Err(QftError::Finiteness(
                    "some line costs no power of eps and some vertex costs no power of g, \
                     so the pairing sum does not terminate"
                        .into(),
                )),
            }
        }
    }
}

/// Largest number of legs in a diagram whose amplitude reaches `ε`-degree
/// `eps_degree`, using the line amplitudes alone.
pub fn eps_leg_bound(model: &ModelSpec, eps_degree: usize) -> Result<usize, QftError> {
    if model.mode() == FinitenessMode::LegsGraded {
        return Ok(eps_degree);
    }
    model
        .lines()
        .legs_per_degree(Grading::Eps)
        .map(|(legs, deg)| eps_degree * legs / deg)
        .ok_or_else(|| {
            QftError::Finiteness(
                "some line costs no power of eps, so legs are unbounded at fixed eps-degree".into(),
            )
        })
}

/// `exp(Σ_{m ≤ K} amp_m t^m/m!)` with every coefficient truncated to the
/// rectangle.
fn exponential_family(
    family: &AmplitudeFamily,
    bound: usize,
    eps_order: usize,
    g_order: usize,
) -> Result<TruncSeries<BiPoly>, SeriesError> {
    let exponent = TruncSeries::from_fn(bound, |m| {
        if m == 0 {
            return BiPoly::zero();
        }
        let inv = Rational::new(One::one(), factorial(m));
        family.amplitude(m).truncate(eps_order, g_order).scale(&inv)
    });
    Ok(exponent
        .exp()?
        .map(|c| c.truncate(eps_order, g_order)))
}

/// The partition function `Z(ε, g)` of `model`, truncated at `ε^N`, `g^J`.
pub fn partition_function(
    model: &ModelSpec,
    eps_order: usize,
    g_order: usize,
) -> Result<PartitionSeries, QftError> {
    let bound = pairing_bound(model, eps_order, g_order)?;
    let lines = exponential_family(model.lines(), bound, eps_order, g_order)?;
    let vertices = exponential_family(model.vertices(), bound, eps_order, g_order)?;
    let z = (0..=bound)
        .into_par_iter()
        .map(|k| {
            let a = &lines.coeffs()[k];
            let b = &vertices.coeffs()[k];
            if a.is_zero() || b.is_zero() {
                return BiPoly::zero();
            }
            a.mul(b)
                .truncate(eps_order, g_order)
                .scale(&Rational::from_integer(factorial(k)))
        })
        .reduce(BiPoly::zero, |x, y| x.add(&y));
    Ok(PartitionSeries::from_bipoly(&z, eps_order, g_order))
}

/// Connected generating function `ln Z`.
pub fn free_energy(z: &PartitionSeries) -> Result<PartitionSeries, QftError> {
    if !z.coeff(0, 0).is_one() {
        return Err(QftError::Series(SeriesError::Domain {
            op: "free_energy",
            reason: "constant term of Z must be one".into(),
        }));
    }
    let log = z.by_total_degree().log()?;
    Ok(PartitionSeries::from_total_degree(&log, z.eps_order, z.g_order))
}

/// Inverse of [`free_energy`]: `exp C` for a table with zero constant term.
pub fn exponentiate(c: &PartitionSeries) -> Result<PartitionSeries, QftError> {
    let e = c.by_total_degree().exp()?;
    Ok(PartitionSeries::from_total_degree(&e, c.eps_order, c.g_order))
}

/// Reads `S(n, k) = n!·[ε^n g^k] Z` off the partitions model.
pub fn stirling_coefficients(n_max: usize) -> Result<StirlingTable, QftError> {
    let z = partition_function(&BuiltinModel::Partitions.spec(), n_max, n_max)?;
    let rows = (0..=n_max)
        .map(|n| {
            z.egf_eps_slice(n)
                .into_iter()
                .take(n + 1)
                .enumerate()
                .map(|(k, c)| {
                    if !c.is_integer() || c < Rational::zero() {
                        return Err(QftError::Inconsistent(format!(
                            "coefficient of eps^{n} g^{k} times {n}! is {c}, not a count"
                        )));
                    }
                    Ok(c.to_integer().to_biguint().unwrap_or_default())
                })
                .collect::<Result<Vec<BigUint>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StirlingTable::from_rows(rows))
}
