//! Co~events as label-indexed families of ket-events over one atom space.
//!
//! A co~event here is always in row form `Σ_x ⟨x|E_x⟩`: one ket-event per
//! label. The cell `(x, a)` is present iff atom `a` belongs to row `x`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::{label_names, AtomSpace, KetEvent, Label};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoEvent {
    space: Arc<AtomSpace>,
    labels: Vec<Label>,
    rows: Vec<KetEvent>,
}

impl CoEvent {
    /// `rows[i]` is the ket-event of `labels[i]`.
    pub fn new(space: Arc<AtomSpace>, labels: Vec<Label>, rows: Vec<KetEvent>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::NoLabels);
        }
        let mut seen = std::collections::BTreeSet::new();
        for label in &labels {
            if !seen.insert(label) {
                return Err(Error::DuplicateLabel(label.to_string()));
            }
        }
        if rows.len() != labels.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} rows for {} labels",
                rows.len(),
                labels.len()
            )));
        }
        let len = space.len();
        for row in &rows {
            if let Some(index) = row.max_index().filter(|&i| i >= len) {
                return Err(Error::AtomOutOfRange { index, len });
            }
        }
        Ok(CoEvent { space, labels, rows })
    }

    /// Convenience constructor from `(label, atoms)` pairs.
    pub fn from_rows<S, I>(space: Arc<AtomSpace>, rows: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (S, Vec<usize>)>,
    {
        let mut labels = Vec::new();
        let mut events = Vec::new();
        for (label, atoms) in rows {
            labels.push(Label::new(label.as_ref())?);
            events.push(atoms.into_iter().collect());
        }
        Self::new(space, labels, events)
    }

    pub fn empty(space: Arc<AtomSpace>, labels: Vec<Label>) -> Result<Self> {
        let rows = vec![KetEvent::empty(); labels.len()];
        Self::new(space, labels, rows)
    }

    /// Every cell of `⟨𝔛|Ω⟩`.
    pub fn full(space: Arc<AtomSpace>, labels: Vec<Label>) -> Result<Self> {
        let rows = vec![KetEvent::full(space.len()); labels.len()];
        Self::new(space, labels, rows)
    }

    pub fn space(&self) -> &Arc<AtomSpace> {
        &self.space
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn rows(&self) -> &[KetEvent] {
        &self.rows
    }

    pub fn row(&self, label: usize) -> &KetEvent {
        &self.rows[label]
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l.as_str() == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn row_of(&self, label: &str) -> Result<&KetEvent> {
        Ok(&self.rows[self.label_index(label)?])
    }

    /// Incidence test for the cell `(label, atom)`.
    pub fn contains(&self, label: usize, atom: usize) -> bool {
        self.rows[label].contains(atom)
    }

    pub fn n_atoms(&self) -> usize {
        self.space.len()
    }

    pub fn n_cells(&self) -> usize {
        self.rows.iter().map(KetEvent::len).sum()
    }

    pub(crate) fn check_compatible(&self, other: &CoEvent) -> Result<()> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        if self.labels != other.labels {
            return Err(Error::LabelMismatch {
                left: label_names(&self.labels),
                right: label_names(&other.labels),
            });
        }
        Ok(())
    }

    fn map_rows(&self, f: impl Fn(&KetEvent) -> KetEvent) -> CoEvent {
        CoEvent {
            space: Arc::clone(&self.space),
            labels: self.labels.clone(),
            rows: self.rows.iter().map(f).collect(),
        }
    }

    fn zip_rows(&self, other: &CoEvent, f: impl Fn(&KetEvent, &KetEvent) -> KetEvent) -> Result<CoEvent> {
        self.check_compatible(other)?;
        Ok(CoEvent {
            space: Arc::clone(&self.space),
            labels: self.labels.clone(),
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// Cellwise union.
    pub fn union(&self, other: &CoEvent) -> Result<CoEvent> {
        self.zip_rows(other, KetEvent::union)
    }

    /// Cellwise intersection.
    pub fn intersection(&self, other: &CoEvent) -> Result<CoEvent> {
        self.zip_rows(other, KetEvent::intersection)
    }
}

pub(crate) fn same_space(a: &Arc<AtomSpace>, b: &Arc<AtomSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// `S^c`: flips every cell, keeping labels and space.
pub fn complement(s: &CoEvent) -> CoEvent {
    let n = s.n_atoms();
    s.map_rows(|row| row.complement(n))
}

/// `A Δ B`, cellwise exclusive-or.
pub fn symmetric_difference(a: &CoEvent, b: &CoEvent) -> Result<CoEvent> {
    a.zip_rows(b, KetEvent::symmetric_difference)
}

/// The match co~event `(H Δ R)^c`: row `x` holds the atoms where hypothesis
/// and reality agree, both covering or both omitting.
pub fn match_coevent(hypotheses: &CoEvent, reality: &CoEvent) -> Result<CoEvent> {
    Ok(complement(&symmetric_difference(hypotheses, reality)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::labels;
    use proptest::prelude::*;

    fn space(n: usize) -> Arc<AtomSpace> {
        Arc::new(AtomSpace::uniform(n).unwrap())
    }

    fn random_coevent(sp: &Arc<AtomSpace>, cells: &[Vec<bool>]) -> CoEvent {
        let ids: Vec<String> = (0..cells.len()).map(|i| format!("x{i}")).collect();
        let rows = cells
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &c)| c).map(|(a, _)| a).collect())
            .collect();
        CoEvent::new(Arc::clone(sp), labels(&ids).unwrap(), rows).unwrap()
    }

    fn grid(m: usize, n: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
        prop::collection::vec(prop::collection::vec(any::<bool>(), n), m)
    }

    #[test]
    fn complement_of_full_is_empty() {
        let sp = space(5);
        let ls = labels(["a", "b", "c"]).unwrap();
        let full = CoEvent::full(Arc::clone(&sp), ls.clone()).unwrap();
        assert_eq!(complement(&full), CoEvent::empty(sp, ls).unwrap());
    }

    #[test]
    fn symmetric_difference_identities() {
        let sp = space(6);
        let a = CoEvent::from_rows(Arc::clone(&sp), [("x", vec![0, 2]), ("y", vec![1, 5])]).unwrap();
        let empty = CoEvent::empty(Arc::clone(&sp), a.labels().to_vec()).unwrap();
        assert_eq!(symmetric_difference(&a, &a).unwrap(), empty);
        assert_eq!(symmetric_difference(&a, &empty).unwrap(), a);
    }

    #[test]
    fn mismatches_are_reported() {
        let a = CoEvent::from_rows(space(3), [("x", vec![0])]).unwrap();
        let b = CoEvent::from_rows(space(3), [("y", vec![0])]).unwrap();
        let c = CoEvent::from_rows(space(4), [("x", vec![0])]).unwrap();
        assert!(matches!(symmetric_difference(&a, &b), Err(Error::LabelMismatch { .. })));
        assert_eq!(symmetric_difference(&a, &c), Err(Error::SpaceMismatch));
        assert_eq!(match_coevent(&a, &c), Err(Error::SpaceMismatch));
    }

    #[test]
    fn construction_validates_rows() {
        let sp = space(3);
        assert_eq!(
            CoEvent::from_rows(Arc::clone(&sp), [("x", vec![3])]),
            Err(Error::AtomOutOfRange { index: 3, len: 3 })
        );
        assert_eq!(
            CoEvent::from_rows(Arc::clone(&sp), [("x", vec![0]), ("x", vec![1])]),
            Err(Error::DuplicateLabel("x".into()))
        );
        assert_eq!(CoEvent::from_rows(sp, Vec::<(&str, Vec<usize>)>::new()), Err(Error::NoLabels));
    }

    #[test]
    fn doctor_example_two_match_is_empty() {
        // Atoms are the four doctor terraces; hypothesis and reality disagree
        // on every cell.
        let sp = space(4);
        let h = CoEvent::from_rows(Arc::clone(&sp), [("x", vec![0, 1]), ("y", vec![1, 2])]).unwrap();
        let r = CoEvent::from_rows(Arc::clone(&sp), [("x", vec![2, 3]), ("y", vec![0, 3])]).unwrap();
        let m = match_coevent(&h, &r).unwrap();
        assert!(m.rows().iter().all(KetEvent::is_empty));
    }

    proptest! {
        #[test]
        fn complement_is_an_involution(cells in grid(3, 5)) {
            let sp = space(5);
            let s = random_coevent(&sp, &cells);
            prop_assert_eq!(complement(&complement(&s)), s);
        }

        #[test]
        fn symmetric_difference_matches_cellwise_xor(a in grid(4, 8), b in grid(4, 8)) {
            let sp = space(8);
            let d = symmetric_difference(&random_coevent(&sp, &a), &random_coevent(&sp, &b)).unwrap();
            for x in 0..4 {
                for atom in 0..8 {
                    prop_assert_eq!(d.contains(x, atom), a[x][atom] ^ b[x][atom]);
                }
            }
        }

        #[test]
        fn symmetric_difference_is_commutative_and_associative(
            (m, n, a, b, c) in (1usize..=6, 1usize..=16).prop_flat_map(|(m, n)| (Just(m), Just(n), grid(m, n), grid(m, n), grid(m, n)))
        ) {
            let sp = space(n);
            let (a, b, c) = (random_coevent(&sp, &a), random_coevent(&sp, &b), random_coevent(&sp, &c));
            prop_assert_eq!(symmetric_difference(&a, &b).unwrap(), symmetric_difference(&b, &a).unwrap());
            let left = symmetric_difference(&symmetric_difference(&a, &b).unwrap(), &c).unwrap();
            let right = symmetric_difference(&a, &symmetric_difference(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(m, a.labels().len());
        }

        #[test]
        fn match_rows_are_agreement_sets(h in grid(3, 6), r in grid(3, 6)) {
            let sp = space(6);
            let m = match_coevent(&random_coevent(&sp, &h), &random_coevent(&sp, &r)).unwrap();
            for x in 0..3 {
                let expected: KetEvent = (0..6)
                    .filter(|&a| (h[x][a] && r[x][a]) || (!h[x][a] && !r[x][a]))
                    .collect();
                prop_assert_eq!(m.row(x), &expected);
            }
        }
    }
}
