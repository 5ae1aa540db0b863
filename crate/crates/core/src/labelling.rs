//! Terrace partitions of the atom space and their common refinement.
//!
//! A co~event `S` sorts every atom `a` by its covering label subset
//! `X(a) = {x : (x, a) ∈ S}`. Atoms sharing a subset form the terrace
//! `ter(X)`, and the family of terraces with their probabilities `p(X)` is the
//! labelling generated by `S`.
//!
//! Terraces carry one covering subset per generating co~event. A labelling
//! built by [`labelling_of`] has one; the Minkowski intersection of two
//! labellings concatenates the keys of the pair it came from, so a refined
//! terrace of `H (∩) R` is keyed by `(X_H, X_R)`.

use std::sync::Arc;

use indexmap::IndexMap;
use num_traits::Zero;

use crate::coevent::{same_space, CoEvent};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::{label_names, AtomSpace, Label, LabelSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Terrace {
    /// Covering label subset under each generating co~event.
    pub covers: Vec<LabelSet>,
    /// Member atoms in increasing order.
    pub atoms: Vec<usize>,
    pub probability: Rational,
}

impl Terrace {
    /// The single covering subset of a terrace generated by one co~event.
    pub fn cover(&self) -> Option<&LabelSet> {
        match self.covers.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }

    pub fn display_key(&self, labels: &[Label]) -> String {
        match self.covers.as_slice() {
            [] => "Ω".to_string(),
            [one] => one.display(labels),
            many => {
                let parts: Vec<String> = many.iter().map(|c| c.display(labels)).collect();
                format!("({})", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    space: Arc<AtomSpace>,
    labels: Vec<Label>,
    terraces: Vec<Terrace>,
}

impl Labelling {
    /// The one-terrace labelling with no generators; neutral for
    /// [`minkowski_intersect`].
    pub fn trivial(space: Arc<AtomSpace>, labels: Vec<Label>) -> Self {
        let atoms: Vec<usize> = (0..space.len()).collect();
        let probability = space.measure(&atoms);
        Labelling { space, labels, terraces: vec![Terrace { covers: Vec::new(), atoms, probability }] }
    }

    pub fn space(&self) -> &Arc<AtomSpace> {
        &self.space
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn terraces(&self) -> &[Terrace] {
        &self.terraces
    }

    pub fn len(&self) -> usize {
        self.terraces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terraces.is_empty()
    }

    /// Look a terrace up by its full key.
    pub fn find(&self, covers: &[LabelSet]) -> Option<&Terrace> {
        self.terraces.iter().find(|t| t.covers == covers)
    }

    /// Terrace of a single-generator labelling whose cover is exactly the named labels.
    pub fn find_by_names(&self, names: &[&str]) -> Result<Option<&Terrace>> {
        let set = names
            .iter()
            .map(|n| {
                self.labels
                    .iter()
                    .position(|l| l.as_str() == *n)
                    .ok_or_else(|| Error::UnknownLabel(n.to_string()))
            })
            .collect::<Result<LabelSet>>()?;
        Ok(self.find(std::slice::from_ref(&set)))
    }

    /// Index of the terrace containing `atom`.
    pub fn terrace_of(&self, atom: usize) -> Option<usize> {
        self.terraces.iter().position(|t| t.atoms.binary_search(&atom).is_ok())
    }

    pub fn total_probability(&self) -> Rational {
        self.terraces.iter().fold(Rational::zero(), |acc, t| acc + &t.probability)
    }

    /// True when every terrace of `self` is a union of terraces of `finer`.
    pub fn is_refined_by(&self, finer: &Labelling) -> bool {
        if !same_space(&self.space, &finer.space) {
            return false;
        }
        finer.terraces.iter().all(|t| {
            let home = t.atoms.first().and_then(|&a| self.terrace_of(a));
            t.atoms.iter().all(|&a| self.terrace_of(a) == home)
        })
    }

    /// Covering label subset of `s` on terrace `index`, checking that the
    /// terrace does not straddle a boundary of `s`.
    pub fn cover_under(&self, s: &CoEvent, index: usize) -> Result<LabelSet> {
        let terrace = &self.terraces[index];
        let first = terrace.atoms[0];
        let cover: LabelSet = (0..s.labels().len()).filter(|&x| s.contains(x, first)).collect();
        for &atom in &terrace.atoms[1..] {
            for x in 0..s.labels().len() {
                if s.contains(x, atom) != cover.contains(x) {
                    return Err(Error::NotRefinement { terrace: index, label: s.labels()[x].to_string() });
                }
            }
        }
        Ok(cover)
    }

    pub(crate) fn check_against(&self, s: &CoEvent) -> Result<()> {
        if !same_space(&self.space, s.space()) {
            return Err(Error::SpaceMismatch);
        }
        if self.labels != s.labels() {
            return Err(Error::LabelMismatch { left: label_names(&self.labels), right: label_names(s.labels()) });
        }
        Ok(())
    }
}

/// The labelling generated by `s`: atoms grouped by covering label subset,
/// terraces ordered by their smallest atom.
pub fn labelling_of(s: &CoEvent) -> Labelling {
    let space = s.space();
    let mut groups: IndexMap<LabelSet, Vec<usize>> = IndexMap::new();
    for atom in 0..space.len() {
        let cover: LabelSet = (0..s.labels().len()).filter(|&x| s.contains(x, atom)).collect();
        groups.entry(cover).or_default().push(atom);
    }
    let terraces = groups
        .into_iter()
        .map(|(cover, atoms)| {
            let probability = space.measure(&atoms);
            Terrace { covers: vec![cover], atoms, probability }
        })
        .collect();
    Labelling { space: Arc::clone(space), labels: s.labels().to_vec(), terraces }
}

/// Common refinement of two labellings of one space: every nonempty pairwise
/// intersection of their terraces, keyed by both parents' covers.
pub fn minkowski_intersect(first: &Labelling, second: &Labelling) -> Result<Labelling> {
    if !same_space(&first.space, &second.space) {
        return Err(Error::SpaceMismatch);
    }
    if first.labels != second.labels {
        return Err(Error::LabelMismatch { left: label_names(&first.labels), right: label_names(&second.labels) });
    }
    let owner = |l: &Labelling| {
        let mut v = vec![0usize; l.space.len()];
        for (i, t) in l.terraces.iter().enumerate() {
            for &a in &t.atoms {
                v[a] = i;
            }
        }
        v
    };
    let (left, right) = (owner(first), owner(second));
    let mut groups: IndexMap<(usize, usize), Vec<usize>> = IndexMap::new();
    for atom in 0..first.space.len() {
        groups.entry((left[atom], right[atom])).or_default().push(atom);
    }
    let terraces = groups
        .into_iter()
        .map(|((i, j), atoms)| {
            let mut covers = first.terraces[i].covers.clone();
            covers.extend(second.terraces[j].covers.iter().cloned());
            let probability = first.space.measure(&atoms);
            Terrace { covers, atoms, probability }
        })
        .collect();
    Ok(Labelling { space: Arc::clone(&first.space), labels: first.labels.clone(), terraces })
}
