//! Scenario documents: a weighted atom space, labels, prior believabilities,
//! and the hypothesis and reality co~events, as JSON.
//!
//! ```json
//! {
//!   "name": "example3",
//!   "atoms": {"weights": ["1/25", "1/100", "3/4", "1/5"]},
//!   "labels": ["tumor", "cold"],
//!   "believabilities": ["1/2", "1/2"],
//!   "hypotheses": {"tumor": [0, 1], "cold": [1, 2]},
//!   "reality": {"tumor": [2], "cold": [1, 2]}
//! }
//! ```
//!
//! `atoms` may also be a bare count `N` for `N` atoms of weight `1/N`;
//! `believabilities` defaults to uniform. Rationals are written `a/b`, as
//! integers, or as decimal literals, quoted or not.

use std::collections::BTreeSet;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::coevent::CoEvent;
use crate::measures::BelievabilityDistribution;
use crate::rational::{self, parse_rational, Rational};
use crate::space::{AtomSpace, KetEvent, Label};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    /// Malformed JSON, wrong types, missing or unknown fields.
    #[error("schema error: {0}")]
    Schema(String),
    /// Well-formed but inconsistent; `path` names the offending field.
    #[error("invalid {path}: {message}")]
    Validation { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Validation { path: path.into(), message: message.into() }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    description: Option<String>,
    atoms: RawAtoms,
    labels: Vec<String>,
    believabilities: Option<Vec<RawRational>>,
    hypotheses: IndexMap<String, Vec<usize>>,
    reality: IndexMap<String, Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawAtoms {
    Count(usize),
    Weighted(RawWeights),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWeights {
    weights: Vec<RawRational>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Text(String),
    Number(serde_json::Number),
}

impl RawRational {
    fn parse(&self, path: &str) -> Result<Rational, ScenarioError> {
        let text = match self {
            RawRational::Text(s) => s.clone(),
            RawRational::Number(n) => n.to_string(),
        };
        parse_rational(&text).map_err(|e| invalid(path, e.to_string()))
    }
}

/// How the atom space was given, kept so that writing preserves the form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomsSpec {
    Uniform(usize),
    Weighted,
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub name: Option<String>,
    pub description: Option<String>,
    pub atoms: AtomsSpec,
    pub believabilities: BelievabilityDistribution,
    pub hypotheses: CoEvent,
    pub reality: CoEvent,
}

impl Scenario {
    pub fn space(&self) -> &Arc<AtomSpace> {
        self.hypotheses.space()
    }

    pub fn labels(&self) -> &[Label] {
        self.hypotheses.labels()
    }

    pub fn display_name(&self) -> &str {
        self.name.as_deref().unwrap_or("unnamed")
    }

    /// The normalized document: exact rationals in lowest terms, sorted
    /// indices, rows in label order, believabilities always explicit.
    pub fn to_document(&self) -> Value {
        let mut doc = serde_json::Map::new();
        if let Some(name) = &self.name {
            doc.insert("name".into(), json!(name));
        }
        if let Some(description) = &self.description {
            doc.insert("description".into(), json!(description));
        }
        let atoms = match self.atoms {
            AtomsSpec::Uniform(n) => json!(n),
            AtomsSpec::Weighted => {
                json!({ "weights": self.space().weights().iter().map(rational::to_exact_string).collect::<Vec<_>>() })
            }
        };
        doc.insert("atoms".into(), atoms);
        doc.insert("labels".into(), json!(self.labels().iter().map(Label::as_str).collect::<Vec<_>>()));
        doc.insert(
            "believabilities".into(),
            json!(self.believabilities.values().iter().map(rational::to_exact_string).collect::<Vec<_>>()),
        );
        doc.insert("hypotheses".into(), rows_document(&self.hypotheses));
        doc.insert("reality".into(), rows_document(&self.reality));
        Value::Object(doc)
    }

    pub fn to_json_string(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_document()).expect("documents serialize");
        out.push('\n');
        out
    }
}

fn rows_document(s: &CoEvent) -> Value {
    let map: serde_json::Map<String, Value> = s
        .labels()
        .iter()
        .zip(s.rows())
        .map(|(l, row)| (l.to_string(), json!(row.iter().collect::<Vec<_>>())))
        .collect();
    Value::Object(map)
}

/// Parse and validate a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| ScenarioError::Schema(e.to_string()))?;
    validate(raw)
}

fn validate(raw: RawScenario) -> Result<Scenario, ScenarioError> {
    let (space, atoms) = match raw.atoms {
        RawAtoms::Count(0) => return Err(invalid("atoms", "at least one atom is required")),
        RawAtoms::Count(n) => (AtomSpace::uniform(n), AtomsSpec::Uniform(n)),
        RawAtoms::Weighted(w) => {
            let weights = w
                .weights
                .iter()
                .enumerate()
                .map(|(i, r)| r.parse(&format!("atoms.weights[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            (AtomSpace::from_weights(weights), AtomsSpec::Weighted)
        }
    };
    let space = Arc::new(space.map_err(|e| invalid("atoms.weights", e.to_string()))?);

    let labels = crate::space::labels(&raw.labels).map_err(|e| invalid("labels", e.to_string()))?;

    let believabilities = match raw.believabilities {
        None => BelievabilityDistribution::uniform(labels.clone()),
        Some(values) => {
            if values.len() != labels.len() {
                return Err(invalid(
                    "believabilities",
                    format!("{} values for {} labels", values.len(), labels.len()),
                ));
            }
            let values = values
                .iter()
                .enumerate()
                .map(|(i, r)| r.parse(&format!("believabilities[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            BelievabilityDistribution::new(labels.clone(), values)
        }
    }
    .map_err(|e| invalid("believabilities", e.to_string()))?;

    let hypotheses = relation("hypotheses", &raw.hypotheses, &labels, &space)?;
    let reality = relation("reality", &raw.reality, &labels, &space)?;
    Ok(Scenario { name: raw.name, description: raw.description, atoms, believabilities, hypotheses, reality })
}

fn relation(
    field: &str,
    rows: &IndexMap<String, Vec<usize>>,
    labels: &[Label],
    space: &Arc<AtomSpace>,
) -> Result<CoEvent, ScenarioError> {
    if let Some(extra) = rows.keys().find(|k| !labels.iter().any(|l| l.as_str() == k.as_str())) {
        return Err(invalid(format!("{field}.{extra}"), "not a declared label"));
    }
    let mut events = Vec::with_capacity(labels.len());
    for label in labels {
        let path = format!("{field}.{label}");
        let indices = rows.get(label.as_str()).ok_or_else(|| invalid(&path, "missing row"))?;
        let mut seen = BTreeSet::new();
        for (i, &atom) in indices.iter().enumerate() {
            if atom >= space.len() {
                return Err(invalid(
                    format!("{path}[{i}]"),
                    format!("atom {atom} out of range for {} atoms", space.len()),
                ));
            }
            if !seen.insert(atom) {
                return Err(invalid(format!("{path}[{i}]"), format!("atom {atom} listed twice")));
            }
        }
        events.push(seen.into_iter().collect::<KetEvent>());
    }
    CoEvent::new(Arc::clone(space), labels.to_vec(), events).map_err(|e| invalid(field, e.to_string()))
}
