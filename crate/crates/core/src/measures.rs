//! Believability, probability and certainty.
//!
//! Probability `P` lives on the atoms, believability `B` on the labels, and
//! certainty `Φ = B × P` on the cells of the bra-ket product. The certainty of
//! a co~event is the total product mass of its cells,
//! `Φ(S) = Σ_x b_x · P(S_x)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::coevent::{same_space, CoEvent};
use crate::error::{Error, Result};
use crate::labelling::{labelling_of, Labelling};
use crate::rational::{self, Rational};
use crate::space::{label_names, AtomSpace, KetEvent, Label, LabelSet};

/// Believability `b_x` per label; non-negative, summing to exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BelievabilityDistribution {
    labels: Vec<Label>,
    values: Vec<Rational>,
}

impl BelievabilityDistribution {
    pub fn new(labels: Vec<Label>, values: Vec<Rational>) -> Result<Self> {
        if labels.len() != values.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} believabilities for {} labels",
                values.len(),
                labels.len()
            )));
        }
        if let Some(i) = values.iter().position(Signed::is_negative) {
            return Err(Error::InvalidDistribution(format!("believability of {} is negative", labels[i])));
        }
        let total = rational::sum(&values);
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "believabilities sum to {}, not 1",
                rational::to_exact_string(&total)
            )));
        }
        Ok(BelievabilityDistribution { labels, values })
    }

    /// `1/m` on each of `m` labels.
    pub fn uniform(labels: Vec<Label>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::NoLabels);
        }
        let w = rational::ratio(1, labels.len() as i64);
        let values = vec![w; labels.len()];
        Self::new(labels, values)
    }

    /// Normalize non-negative weights with a positive total.
    pub(crate) fn normalized(labels: Vec<Label>, weights: Vec<Rational>) -> Option<Self> {
        let total = rational::sum(&weights);
        if !total.is_positive() {
            return None;
        }
        let values = weights.into_iter().map(|w| w / &total).collect();
        Some(BelievabilityDistribution { labels, values })
    }

    /// For values already known to form a distribution.
    pub(crate) fn from_parts(labels: Vec<Label>, values: Vec<Rational>) -> Self {
        BelievabilityDistribution { labels, values }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, label: usize) -> &Rational {
        &self.values[label]
    }

    pub fn get(&self, label: &str) -> Result<&Rational> {
        self.labels
            .iter()
            .position(|l| l.as_str() == label)
            .map(|i| &self.values[i])
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// `B(⟨X|) = Σ_{x∈X} b_x`.
    pub fn of_set(&self, set: &LabelSet) -> Rational {
        rational::sum(set.indices().iter().map(|&i| &self.values[i]))
    }

    /// Labels with positive believability.
    pub fn support(&self) -> LabelSet {
        (0..self.values.len()).filter(|&i| self.values[i].is_positive()).collect()
    }

    pub(crate) fn check_labels(&self, labels: &[Label]) -> Result<()> {
        if self.labels != labels {
            return Err(Error::LabelMismatch { left: label_names(&self.labels), right: label_names(labels) });
        }
        Ok(())
    }
}

/// An atom space paired with believabilities over a label set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertaintySpace {
    pub space: Arc<AtomSpace>,
    pub believabilities: BelievabilityDistribution,
}

impl CertaintySpace {
    pub fn new(space: Arc<AtomSpace>, believabilities: BelievabilityDistribution) -> Self {
        CertaintySpace { space, believabilities }
    }

    fn check(&self, s: &CoEvent) -> Result<()> {
        if !same_space(&self.space, s.space()) {
            return Err(Error::SpaceMismatch);
        }
        self.believabilities.check_labels(s.labels())
    }
}

/// Certainty per cell `(label, terrace)`: `φ_x(X) = b_x · p(X)` for `x ∈ X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertaintyTable {
    labelling: Labelling,
    cells: BTreeMap<(usize, usize), Rational>,
}

impl CertaintyTable {
    pub fn labelling(&self) -> &Labelling {
        &self.labelling
    }

    pub fn labels(&self) -> &[Label] {
        self.labelling.labels()
    }

    /// Entry for label index `label` on terrace index `terrace`.
    pub fn get(&self, label: usize, terrace: usize) -> Option<&Rational> {
        self.cells.get(&(label, terrace))
    }

    /// Entry for a label on the terrace containing `atom`.
    pub fn at_atom(&self, label: &str, atom: usize) -> Result<Option<&Rational>> {
        let x = self
            .labels()
            .iter()
            .position(|l| l.as_str() == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        Ok(self.labelling.terrace_of(atom).and_then(|t| self.get(x, t)))
    }

    /// `((label, terrace), value)` in label-major order.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.cells.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total(&self) -> Rational {
        rational::sum(self.cells.values())
    }

    fn divided_by(&self, d: &Rational) -> CertaintyTable {
        CertaintyTable {
            labelling: self.labelling.clone(),
            cells: self.cells.iter().map(|(&k, v)| (k, v / d)).collect(),
        }
    }
}

/// `P(E)`, the summed weight of the event's atoms.
pub fn ket_probability(event: &KetEvent, space: &AtomSpace) -> Rational {
    event.probability(space)
}

/// `B(⟨X|)` for a set of label names.
pub fn bra_believability<S: AsRef<str>>(
    labels: impl IntoIterator<Item = S>,
    b: &BelievabilityDistribution,
) -> Result<Rational> {
    let mut set = Vec::new();
    for name in labels {
        let name = name.as_ref();
        let i = b
            .labels
            .iter()
            .position(|l| l.as_str() == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))?;
        set.push(i);
    }
    Ok(b.of_set(&set.into_iter().collect()))
}

/// `Φ(S) = Σ_x b_x · P(S_x)`.
pub fn certainty_of(s: &CoEvent, c: &CertaintySpace) -> Result<Rational> {
    c.check(s)?;
    Ok(weighted_rows(s, &c.believabilities))
}

pub(crate) fn weighted_rows(s: &CoEvent, b: &BelievabilityDistribution) -> Rational {
    s.rows()
        .iter()
        .zip(b.values())
        .fold(Rational::zero(), |acc, (row, bx)| acc + bx * row.probability(s.space()))
}

/// Certainty table of `S` over its own labelling.
pub fn certainty_table(s: &CoEvent, c: &CertaintySpace) -> Result<CertaintyTable> {
    c.check(s)?;
    certainty_table_over(s, &labelling_of(s), &c.believabilities)
}

/// Certainty table of `S` over any labelling that refines it, such as the
/// Minkowski intersection of the hypothesis and reality labellings.
pub fn certainty_table_over(
    s: &CoEvent,
    labelling: &Labelling,
    b: &BelievabilityDistribution,
) -> Result<CertaintyTable> {
    labelling.check_against(s)?;
    b.check_labels(s.labels())?;
    let mut cells = BTreeMap::new();
    for (t, terrace) in labelling.terraces().iter().enumerate() {
        let cover = labelling.cover_under(s, t)?;
        for &x in cover.indices() {
            cells.insert((x, t), b.value(x) * &terrace.probability);
        }
    }
    Ok(CertaintyTable { labelling: labelling.clone(), cells })
}

/// The certainty table of `S` conditioned on `S` itself: every entry divided
/// by `Φ(S)`.
pub fn condition_certainty(s: &CoEvent, c: &CertaintySpace) -> Result<CertaintyTable> {
    let table = certainty_table(s, c)?;
    let total = table.total();
    if total.is_zero() {
        return Err(Error::UndefinedConditional);
    }
    Ok(table.divided_by(&total))
}
