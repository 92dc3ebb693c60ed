//! JSON model files.
//!
//! ```json
//! {
//!   "mode": "finite",
//!   "lines":    [{"arity": 2, "amplitude": [{"coef": "1", "eps": 1, "g": 0}]}],
//!   "vertices": [{"arity": "all", "amplitude": [{"coef": "1/2", "eps": 0, "g": "m"}]}]
//! }
//! ```
//!
//! `mode` is `"finite"` or `"legs-graded"`. An entry with `"arity": "all"`
//! supplies every arity not listed explicitly; inside it an exponent may be
//! the string `"m"`, standing for the arity.

use serde::{Deserialize, Serialize};

use super::model::{AmplitudeFamily, Exponent, FinitenessMode, ModelSpec, TemplateMonomial};
use super::QftError;
use crate::series::{parse_rational, BiPoly};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    mode: ModeField,
    #[serde(default)]
    lines: Vec<FamilyEntry>,
    #[serde(default)]
    vertices: Vec<FamilyEntry>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ModeField {
    Finite,
    LegsGraded,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyEntry {
    arity: ArityField,
    amplitude: Vec<MonomialField>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ArityField {
    Fixed(usize),
    Symbol(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonomialField {
    coef: String,
    #[serde(default)]
    eps: ExponentField,
    #[serde(default)]
    g: ExponentField,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ExponentField {
    Fixed(u32),
    Symbol(String),
}

impl Default for ExponentField {
    fn default() -> Self {
        ExponentField::Fixed(0)
    }
}

fn invalid(msg: impl Into<String>) -> QftError {
    QftError::InvalidModel(msg.into())
}

fn parse_exponent(e: &ExponentField, templated: bool) -> Result<Exponent, QftError> {
    match e {
        ExponentField::Fixed(v) => Ok(Exponent::Fixed(*v)),
        ExponentField::Symbol(s) if s == "m" && templated => Ok(Exponent::Arity),
        ExponentField::Symbol(s) if s == "m" => {
            Err(invalid("exponent `m` is only allowed in an `\"arity\": \"all\"` entry"))
        }
        ExponentField::Symbol(s) => Err(invalid(format!("bad exponent `{s}`"))),
    }
}

fn parse_family(entries: &[FamilyEntry], side: &str) -> Result<AmplitudeFamily, QftError> {
    let mut family = AmplitudeFamily::new();
    let mut seen_all = false;
    let mut seen = std::collections::BTreeSet::new();
    for entry in entries {
        let templated = match &entry.arity {
            ArityField::Fixed(m) => {
                if !seen.insert(*m) {
                    return Err(invalid(format!("{side}: arity {m} listed twice")));
                }
                false
            }
            ArityField::Symbol(s) if s == "all" => {
                if seen_all {
                    return Err(invalid(format!("{side}: more than one `all` entry")));
                }
                seen_all = true;
                true
            }
            ArityField::Symbol(s) => return Err(invalid(format!("{side}: bad arity `{s}`"))),
        };
        let mut monomials = Vec::with_capacity(entry.amplitude.len());
        for mono in &entry.amplitude {
            let coef = parse_rational(&mono.coef)
                .ok_or_else(|| invalid(format!("{side}: bad rational `{}`", mono.coef)))?;
            monomials.push(TemplateMonomial {
                coef,
                eps: parse_exponent(&mono.eps, templated)?,
                g: parse_exponent(&mono.g, templated)?,
            });
        }
        family = match entry.arity {
            ArityField::Fixed(m) => {
                let amp = BiPoly::from_terms(monomials.into_iter().map(|t| {
                    let fixed = |e: Exponent| match e {
                        Exponent::Fixed(v) => v,
                        Exponent::Arity => unreachable!("rejected above"),
                    };
                    ((fixed(t.eps), fixed(t.g)), t.coef)
                }));
                family.with(m, amp)
            }
            ArityField::Symbol(_) => family.with_all(monomials),
        };
    }
    Ok(family)
}

/// Parses a model file.
pub fn model_from_json(text: &str) -> Result<ModelSpec, QftError> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| invalid(format!("malformed model file: {e}")))?;
    let mode = match file.mode {
        ModeField::Finite => FinitenessMode::FiniteSupport,
        ModeField::LegsGraded => FinitenessMode::LegsGraded,
    };
    ModelSpec::new(
        parse_family(&file.lines, "lines")?,
        parse_family(&file.vertices, "vertices")?,
        mode,
    )
}

fn exponent_field(e: Exponent) -> ExponentField {
    match e {
        Exponent::Fixed(v) => ExponentField::Fixed(v),
        Exponent::Arity => ExponentField::Symbol("m".into()),
    }
}

fn family_entries(family: &AmplitudeFamily) -> Vec<FamilyEntry> {
    let mut out: Vec<FamilyEntry> = family
        .explicit()
        .iter()
        .map(|(&m, amp)| FamilyEntry {
            arity: ArityField::Fixed(m),
            amplitude: amp
                .terms()
                .map(|(&(e, g), c)| MonomialField {
                    coef: c.to_string(),
                    eps: ExponentField::Fixed(e),
                    g: ExponentField::Fixed(g),
                })
                .collect(),
        })
        .collect();
    if let Some(template) = family.template() {
        out.push(FamilyEntry {
            arity: ArityField::Symbol("all".into()),
            amplitude: template
                .iter()
                .map(|t| MonomialField {
                    coef: t.coef.to_string(),
                    eps: exponent_field(t.eps),
                    g: exponent_field(t.g),
                })
                .collect(),
        });
    }
    out
}

/// Serializes a model in the same format [`model_from_json`] reads.
pub fn model_to_json(model: &ModelSpec) -> String {
    let file = ModelFile {
        mode: match model.mode() {
            FinitenessMode::FiniteSupport => ModeField::Finite,
            FinitenessMode::LegsGraded => ModeField::LegsGraded,
        },
        lines: family_entries(model.lines()),
        vertices: family_entries(model.vertices()),
    };
    serde_json::to_string_pretty(&file).expect("model file serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qft::BuiltinModel;

    #[test]
    fn builtins_round_trip() {
        for m in BuiltinModel::ALL {
            let spec = m.spec();
            let text = model_to_json(&spec);
            assert_eq!(model_from_json(&text).unwrap(), spec, "{m}");
        }
    }

    #[test]
    fn parses_phi4_by_hand() {
        let text = r#"{"mode": "finite",
            "lines": [{"arity": 2, "amplitude": [{"coef": "1", "eps": 1}]}],
            "vertices": [{"arity": 4, "amplitude": [{"coef": "2/2", "g": 1}]}]}"#;
        assert_eq!(model_from_json(text).unwrap(), BuiltinModel::Phi4.spec());
    }

    #[test]
    fn rejects_bad_files() {
        let cases = [
            r#"{"mode": "weird", "lines": [], "vertices": []}"#,
            r#"{"mode": "finite", "lines": [{"arity": 2, "amplitude": [{"coef": "1/0", "eps": 1}]}]}"#,
            r#"{"mode": "finite", "lines": [{"arity": 2, "amplitude": [{"coef": "1", "eps": "m"}]}]}"#,
            r#"{"mode": "finite", "lines": [{"arity": "some", "amplitude": []}]}"#,
            r#"{"mode": "finite", "lines": [{"arity": 0, "amplitude": [{"coef": "1"}]}]}"#,
            r#"{"mode": "finite", "lines": [{"arity": 1, "amplitude": []}, {"arity": 1, "amplitude": []}]}"#,
            r#"{"mode": "legs-graded", "lines": [{"arity": 3, "amplitude": [{"coef": "1", "eps": 2}]}]}"#,
            r#"{"mode": "finite", "extra": 1}"#,
            "not json",
        ];
        for text in cases {
            assert!(
                matches!(model_from_json(text), Err(QftError::InvalidModel(_))),
                "{text}"
            );
        }
    }
}
