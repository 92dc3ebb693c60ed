use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::QftError;
use crate::series::{BiPoly, Rational};

/// How the engine proves that every truncated coefficient is a finite sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinitenessMode {
    /// The pairing index is bounded by how many legs each power of `ε`
    /// (or of `g`) can buy.
    FiniteSupport,
    /// Every `m`-legged line carries at least `ε^m`, so the pairing index
    /// never exceeds the `ε` order.
    LegsGraded,
}

/// Exponent of a template monomial: either a fixed integer or the arity of
/// the node it is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    Fixed(u32),
    Arity,
}

impl Exponent {
    fn at(self, arity: usize) -> u32 {
        match self {
            Exponent::Fixed(e) => e,
            Exponent::Arity => arity as u32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateMonomial {
    pub coef: Rational,
    pub eps: Exponent,
    pub g: Exponent,
}

/// Amplitudes indexed by arity: an explicit finite map, optionally
/// backed by a template that supplies every other arity.
///
/// Explicit entries take precedence over the template.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AmplitudeFamily {
    explicit: BTreeMap<usize, BiPoly>,
    all: Option<Vec<TemplateMonomial>>,
}

/// Which bookkeeping variable a leg bound is measured in.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Grading {
    Eps,
    G,
}

impl AmplitudeFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, arity: usize, amplitude: BiPoly) -> Self {
        self.explicit.insert(arity, amplitude);
        self
    }

    pub fn with_all(mut self, template: Vec<TemplateMonomial>) -> Self {
        self.all = Some(template);
        self
    }

    pub fn explicit(&self) -> &BTreeMap<usize, BiPoly> {
        &self.explicit
    }

    pub fn template(&self) -> Option<&[TemplateMonomial]> {
        self.all.as_deref()
    }

    pub fn is_finite(&self) -> bool {
        self.all.is_none()
    }

    /// Amplitude of arity `m`; zero when the family has no such node.
    pub fn amplitude(&self, m: usize) -> BiPoly {
        if let Some(a) = self.explicit.get(&m) {
            return a.clone();
        }
        match &self.all {
            Some(template) if m >= 1 => BiPoly::from_terms(
                template
                    .iter()
                    .map(|t| ((t.eps.at(m), t.g.at(m)), t.coef.clone())),
            ),
            _ => BiPoly::zero(),
        }
    }

    /// Arities `1..=max_arity` with a nonzero amplitude.
    pub fn arities_up_to(&self, max_arity: usize) -> Vec<usize> {
        (1..=max_arity).filter(|&m| !self.amplitude(m).is_zero()).collect()
    }

    pub fn max_explicit_arity(&self) -> usize {
        self.explicit.keys().copied().max().unwrap_or(0)
    }

    /// Largest number of legs per unit of the given grading over the whole
    /// family, as the pair `(legs, degree)` maximizing `legs/degree`.
    /// `None` if some node costs nothing or the ratio is unbounded.
    /// `Some((0, 1))` for an empty family.
    pub(crate) fn legs_per_degree(&self, grading: Grading) -> Option<(usize, usize)> {
        let degree = |p: &BiPoly| match grading {
            Grading::Eps => p.min_eps_degree(),
            Grading::G => p.min_g_degree(),
        };
        let mut best = (0usize, 1usize);
        let mut consider = |legs: usize, deg: usize| {
            if legs * best.1 > best.0 * deg {
                best = (legs, deg);
            }
        };
        for (&m, amp) in &self.explicit {
            match degree(amp) {
                None => {}
                Some(0) => return None,
                Some(d) => consider(m, d as usize),
            }
        }
        if let Some(template) = &self.all {
            for t in template {
                let e = match grading {
                    Grading::Eps => t.eps,
                    Grading::G => t.g,
                };
                match e {
                    // m legs for degree m
                    Exponent::Arity => consider(1, 1),
                    Exponent::Fixed(_) => return None,
                }
            }
        }
        Some(best)
    }

    fn validate(&self, side: &str) -> Result<(), QftError> {
        if self.explicit.contains_key(&0) {
            return Err(QftError::InvalidModel(format!("{side}: arity must be at least 1")));
        }
        Ok(())
    }
}

/// A zero-dimensional field theory: generalised line amplitudes `L_m`,
/// vertex amplitudes `V_n`, and the finiteness mode that bounds the pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    lines: AmplitudeFamily,
    vertices: AmplitudeFamily,
    mode: FinitenessMode,
}

impl ModelSpec {
    pub fn new(
        lines: AmplitudeFamily,
        vertices: AmplitudeFamily,
        mode: FinitenessMode,
    ) -> Result<Self, QftError> {
        lines.validate("lines")?;
        vertices.validate("vertices")?;
        if mode == FinitenessMode::LegsGraded {
            for (&m, amp) in lines.explicit() {
                if let Some(d) = amp.min_eps_degree() {
                    if (d as usize) < m {
                        return Err(QftError::InvalidModel(format!(
                            "legs-graded model: line of arity {m} has a term of eps-degree {d} < {m}"
                        )));
                    }
                }
            }
            if let Some(template) = lines.template() {
                if template.iter().any(|t| t.eps != Exponent::Arity) {
                    return Err(QftError::InvalidModel(
                        "legs-graded model: an all-arity line template must carry eps^m".into(),
                    ));
                }
            }
        }
        Ok(Self {
            lines,
            vertices,
            mode,
        })
    }

    pub fn lines(&self) -> &AmplitudeFamily {
        &self.lines
    }

    pub fn vertices(&self) -> &AmplitudeFamily {
        &self.vertices
    }

    pub fn mode(&self) -> FinitenessMode {
        self.mode
    }

    /// Replaces the line amplitude of one arity, keeping everything else.
    pub fn with_line(&self, arity: usize, amplitude: BiPoly) -> Result<Self, QftError> {
        Self::new(self.lines.clone().with(arity, amplitude), self.vertices.clone(), self.mode)
    }
}

/// Models that ship with the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinModel {
    /// Two-ended lines weighted by `ε`, four-point vertices weighted by `g`.
    Phi4,
    /// One-ended lines weighted by `ε`, `n`-point vertices weighted by `g`
    /// for every `n`: generates Stirling numbers of the second kind.
    Partitions,
    /// `m`-legged lines weighted by `ε^m`, unit vertices of every arity:
    /// generates squared Bell numbers.
    BellSquared,
}

impl BuiltinModel {
    pub const ALL: [BuiltinModel; 3] = [Self::Phi4, Self::Partitions, Self::BellSquared];

    pub fn name(self) -> &'static str {
        match self {
            Self::Phi4 => "phi4",
            Self::Partitions => "partitions",
            Self::BellSquared => "bell-squared",
        }
    }

    pub fn spec(self) -> ModelSpec {
        let one = Rational::one();
        let (lines, vertices, mode) = match self {
            Self::Phi4 => (
                AmplitudeFamily::new().with(2, BiPoly::eps()),
                AmplitudeFamily::new().with(4, BiPoly::g()),
                FinitenessMode::FiniteSupport,
            ),
            Self::Partitions => (
                AmplitudeFamily::new().with(1, BiPoly::eps()),
                AmplitudeFamily::new().with_all(vec![TemplateMonomial {
                    coef: one,
                    eps: Exponent::Fixed(0),
                    g: Exponent::Fixed(1),
                }]),
                FinitenessMode::FiniteSupport,
            ),
            Self::BellSquared => (
                AmplitudeFamily::new().with_all(vec![TemplateMonomial {
                    coef: one.clone(),
                    eps: Exponent::Arity,
                    g: Exponent::Fixed(0),
                }]),
                AmplitudeFamily::new().with_all(vec![TemplateMonomial {
                    coef: one,
                    eps: Exponent::Fixed(0),
                    g: Exponent::Fixed(0),
                }]),
                FinitenessMode::LegsGraded,
            ),
        };
        ModelSpec::new(lines, vertices, mode).expect("built-in models are valid")
    }
}

impl fmt::Display for BuiltinModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinModel {
    type Err = QftError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| QftError::UnknownModel(s.to_string()))
    }
}

/// Looks up a built-in model by name.
pub fn builtin_model(name: &str) -> Result<ModelSpec, QftError> {
    Ok(name.parse::<BuiltinModel>()?.spec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_partitions() {
        let m = builtin_model("partitions").unwrap();
        assert_eq!(m.lines().explicit().len(), 1);
        assert_eq!(m.lines().amplitude(1), BiPoly::eps());
        assert!(m.lines().amplitude(2).is_zero());
        for n in 1..10 {
            assert_eq!(m.vertices().amplitude(n), BiPoly::g());
        }
        assert_eq!(m.mode(), FinitenessMode::FiniteSupport);
    }

    #[test]
    fn builtin_phi4() {
        let m = builtin_model("phi4").unwrap();
        assert_eq!(m.lines().amplitude(2), BiPoly::eps());
        assert_eq!(m.vertices().amplitude(4), BiPoly::g());
        assert_eq!(m.lines().arities_up_to(10), vec![2]);
        assert_eq!(m.vertices().arities_up_to(10), vec![4]);
    }

    #[test]
    fn builtin_bell_squared() {
        let m = builtin_model("bell-squared").unwrap();
        for k in 1..8u32 {
            assert_eq!(
                m.lines().amplitude(k as usize),
                BiPoly::monomial(Rational::one(), k, 0)
            );
            assert_eq!(m.vertices().amplitude(k as usize), BiPoly::one());
        }
        assert!(m.lines().amplitude(0).is_zero());
        assert_eq!(m.mode(), FinitenessMode::LegsGraded);
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(builtin_model("phi3"), Err(QftError::UnknownModel(_))));
    }

    #[test]
    fn legs_graded_validation() {
        let lines = AmplitudeFamily::new().with(2, BiPoly::eps());
        let err = ModelSpec::new(lines, AmplitudeFamily::new(), FinitenessMode::LegsGraded);
        assert!(matches!(err, Err(QftError::InvalidModel(_))));
        let lines = AmplitudeFamily::new().with(0, BiPoly::eps());
        let err = ModelSpec::new(lines, AmplitudeFamily::new(), FinitenessMode::FiniteSupport);
        assert!(matches!(err, Err(QftError::InvalidModel(_))));
    }
}
