//! Seeded random models for cross-checking the engine against the diagram
//! oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AmplitudeFamily, FinitenessMode, ModelSpec};
use crate::series::{BiPoly, Rational};

fn small_rational(rng: &mut impl Rng) -> Rational {
    let mut num: i64 = rng.random_range(-3..=3);
    if num == 0 {
        num = 1;
    }
    Rational::new(num.into(), rng.random_range(1i64..=3).into())
}

/// Random finite-support model with arities in `1..=max_arity`.
///
/// Every `m`-legged line carries `ε^m` or `ε^{m+1}` (times an optional `g`),
/// so the pairing bound equals the `ε` order and the total number of legs
/// in any contributing diagram never exceeds it.
pub fn random_finite_model(rng: &mut impl Rng, max_arity: usize) -> ModelSpec {
    let mut lines = AmplitudeFamily::new();
    let mut vertices = AmplitudeFamily::new();
    let mut any_line = false;
    let mut any_vertex = false;
    for m in 1..=max_arity {
        if rng.random_bool(0.8) || (m == max_arity && !any_line) {
            any_line = true;
            let terms = (0..rng.random_range(1..=2)).map(|_| {
                let eps = m as u32 + rng.random_bool(0.25) as u32;
                let g = rng.random_range(0..=1);
                ((eps, g), small_rational(rng))
            });
            lines = lines.with(m, BiPoly::from_terms(terms.collect::<Vec<_>>()));
        }
        if rng.random_bool(0.8) || (m == max_arity && !any_vertex) {
            any_vertex = true;
            let terms = (0..rng.random_range(1..=2)).map(|_| {
                let eps = rng.random_range(0..=1);
                let g = rng.random_range(0..=2);
                ((eps, g), small_rational(rng))
            });
            vertices = vertices.with(m, BiPoly::from_terms(terms.collect::<Vec<_>>()));
        }
    }
    ModelSpec::new(lines, vertices, FinitenessMode::FiniteSupport)
        .expect("random models use arities >= 1")
}

/// `count` models from a fixed seed.
pub fn random_finite_models(seed: u64, count: usize, max_arity: usize) -> Vec<ModelSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_finite_model(&mut rng, max_arity))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qft::pairing_bound;

    #[test]
    fn seeded_models_are_reproducible_and_bounded() {
        let a = random_finite_models(7, 10, 3);
        assert_eq!(a, random_finite_models(7, 10, 3));
        for m in &a {
            assert!(!m.lines().explicit().is_empty());
            assert!(!m.vertices().explicit().is_empty());
            assert!(pairing_bound(m, 6, 3).unwrap() <= 6);
        }
    }
}
