//! Labels, weighted atom spaces, and ket-events.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Identifier of a bra-event: an observer, a hypothesis, a taster.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(Label(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Build a label list, rejecting empty and duplicate ids.
pub fn labels<S: AsRef<str>>(ids: impl IntoIterator<Item = S>) -> Result<Vec<Label>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for id in ids {
        let label = Label::new(id.as_ref())?;
        if !seen.insert(label.clone()) {
            return Err(Error::DuplicateLabel(label.0));
        }
        out.push(label);
    }
    if out.is_empty() {
        return Err(Error::NoLabels);
    }
    Ok(out)
}

pub(crate) fn label_names(labels: &[Label]) -> Vec<String> {
    labels.iter().map(|l| l.0.clone()).collect()
}

/// The ket side of a finite bra-ket space: ordered atoms with probability
/// weights summing to exactly one. Atom order fixes every output ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSpace {
    ids: Vec<String>,
    weights: Vec<Rational>,
}

impl AtomSpace {
    /// `n` atoms of weight `1/n`, named `0..n`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDistribution("an atom space needs at least one atom".into()));
        }
        let w = rational::ratio(1, n as i64);
        Self::from_weights(vec![w; n])
    }

    /// Atoms named `0..len` with the given weights.
    pub fn from_weights(weights: Vec<Rational>) -> Result<Self> {
        let ids = (0..weights.len()).map(|i| i.to_string()).collect();
        Self::new(ids, weights)
    }

    pub fn new(ids: Vec<String>, weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidDistribution("an atom space needs at least one atom".into()));
        }
        if ids.len() != weights.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} atom ids for {} weights",
                ids.len(),
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::InvalidDistribution(format!("atom {i} has negative weight")));
        }
        let total = rational::sum(&weights);
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "atom weights sum to {}, not 1",
                rational::to_exact_string(&total)
            )));
        }
        Ok(AtomSpace { ids, weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, atom: usize) -> &Rational {
        &self.weights[atom]
    }

    /// Total weight of a set of atoms.
    pub fn measure<'a>(&self, atoms: impl IntoIterator<Item = &'a usize>) -> Rational {
        atoms.into_iter().fold(Rational::default(), |acc, &a| acc + &self.weights[a])
    }
}

/// A set of atom indices: a ket-event.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KetEvent {
    members: BTreeSet<usize>,
}

impl KetEvent {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.members.contains(&atom)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.members.last().copied()
    }

    pub fn union(&self, other: &KetEvent) -> KetEvent {
        self.members.union(&other.members).copied().collect()
    }

    pub fn intersection(&self, other: &KetEvent) -> KetEvent {
        self.members.intersection(&other.members).copied().collect()
    }

    pub fn difference(&self, other: &KetEvent) -> KetEvent {
        self.members.difference(&other.members).copied().collect()
    }

    pub fn symmetric_difference(&self, other: &KetEvent) -> KetEvent {
        self.members.symmetric_difference(&other.members).copied().collect()
    }

    /// Complement within a space of `n` atoms.
    pub fn complement(&self, n: usize) -> KetEvent {
        (0..n).filter(|a| !self.members.contains(a)).collect()
    }

    /// Weight of this event in `space`.
    pub fn probability(&self, space: &AtomSpace) -> Rational {
        space.measure(&self.members)
    }
}

impl FromIterator<usize> for KetEvent {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        KetEvent { members: iter.into_iter().collect() }
    }
}

/// A subset of labels, stored as sorted indices into a label list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelSet(Vec<usize>);

impl LabelSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn contains(&self, label: usize) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Render as `{a,b}` using `labels` for names; `∅` when empty.
    pub fn display(&self, labels: &[Label]) -> String {
        if self.0.is_empty() {
            return "∅".to_string();
        }
        let names: Vec<&str> = self.0.iter().map(|&i| labels[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl FromIterator<usize> for LabelSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        LabelSet(v)
    }
}
