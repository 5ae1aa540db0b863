//! The co~event Bayes update.
//!
//! Hypotheses `H` and reality `R` meet in the match co~event
//! `M = (H Δ R)^c`. Its row marginals `μ_x = P(M_x)` act as likelihoods:
//!
//! ```text
//! b_post_x = b_x μ_x / Φ(M),    Φ(M) = Σ_y b_y μ_y
//! ```
//!
//! and the posterior certainty of `M` is `Σ_x b_post_x μ_x`.
//!
//! Two alternatives are kept for comparison: the ket-formula, which reweights
//! terrace probabilities by believability (it answers a different question and
//! is not recommended for hypothesis updating), and the bra-ket formula, which
//! is plain conditioning of the certainty table.

use num_traits::{One, Signed, Zero};

use crate::coevent::{match_coevent, CoEvent};
use crate::error::{Error, Result};
use crate::labelling::{labelling_of, minkowski_intersect, Labelling};
use crate::measures::{
    certainty_table_over, condition_certainty, weighted_rows, BelievabilityDistribution, CertaintySpace,
    CertaintyTable,
};
use crate::rational::{self, Rational};
use crate::space::{label_names, Label};

/// `μ_x`, the probability that hypothesis and reality agree on label `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchVector {
    labels: Vec<Label>,
    values: Vec<Rational>,
}

impl MatchVector {
    pub fn new(labels: Vec<Label>, values: Vec<Rational>) -> Result<Self> {
        if labels.len() != values.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} match probabilities for {} labels",
                values.len(),
                labels.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| v.is_negative() || *v > Rational::one()) {
            return Err(Error::InvalidDistribution(format!("match probability of {} is outside [0, 1]", labels[i])));
        }
        Ok(MatchVector { labels, values })
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, label: &str) -> Result<&Rational> {
        self.labels
            .iter()
            .position(|l| l.as_str() == label)
            .map(|i| &self.values[i])
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

/// Row marginals of the match co~event.
///
/// Each `μ_x` is computed twice, as the weight of the agreement set and as
/// `1 − p_H − p_R + 2·p_{H∩R}`; the two must agree exactly.
pub fn mu_vector(hypotheses: &CoEvent, reality: &CoEvent) -> Result<MatchVector> {
    let m = match_coevent(hypotheses, reality)?;
    let space = m.space();
    let values = (0..m.labels().len())
        .map(|x| {
            let (h, r) = (hypotheses.row(x), reality.row(x));
            let direct = m.row(x).probability(space);
            let via_marginals = Rational::one() - h.probability(space) - r.probability(space)
                + rational::int(2) * h.intersection(r).probability(space);
            assert_eq!(direct, via_marginals, "match probability paths disagree for {}", m.labels()[x]);
            direct
        })
        .collect();
    MatchVector::new(m.labels().to_vec(), values)
}

/// Outcome of one bra-formula update.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Posterior {
    pub posterior: BelievabilityDistribution,
    /// `Φ(M) = Σ b_x μ_x` under the prior; the normalizer.
    pub phi_prior: Rational,
    /// `Σ b_post_x μ_x`.
    pub phi_post: Rational,
}

/// `b_post_x = b_x μ_x / Σ_y b_y μ_y`.
pub fn bra_posterior(prior: &BelievabilityDistribution, mu: &MatchVector) -> Result<Posterior> {
    if prior.labels() != mu.labels() {
        return Err(Error::LabelMismatch { left: label_names(prior.labels()), right: label_names(&mu.labels) });
    }
    let weights: Vec<Rational> = prior.values().iter().zip(&mu.values).map(|(b, m)| b * m).collect();
    let phi_prior = rational::sum(&weights);
    let posterior =
        BelievabilityDistribution::normalized(prior.labels().to_vec(), weights).ok_or(Error::UndefinedPosterior)?;
    let phi_post = dot(&posterior, mu);
    Ok(Posterior { posterior, phi_prior, phi_post })
}

pub(crate) fn dot(b: &BelievabilityDistribution, mu: &MatchVector) -> Rational {
    b.values().iter().zip(&mu.values).fold(Rational::zero(), |acc, (b, m)| acc + b * m)
}

/// Posterior certainty table of `M` over its own labelling; its total is the
/// posterior certainty `Σ b_post_x μ_x`.
pub fn posterior_certainty(m: &CoEvent, posterior: &BelievabilityDistribution) -> Result<CertaintyTable> {
    certainty_table_over(m, &labelling_of(m), posterior)
}

/// Posterior certainty table of `M` over a finer labelling.
pub fn posterior_certainty_over(
    m: &CoEvent,
    labelling: &Labelling,
    posterior: &BelievabilityDistribution,
) -> Result<CertaintyTable> {
    certainty_table_over(m, labelling, posterior)
}

/// Everything the bra-formula says about one `(H, R)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BayesReport {
    pub prior: BelievabilityDistribution,
    pub matched: CoEvent,
    pub mu: MatchVector,
    pub phi_prior: Rational,
    pub posterior: BelievabilityDistribution,
    pub phi_post: Rational,
    /// `H (∩) R`, the common refinement both labellings agree on.
    pub refinement: Labelling,
    pub prior_table: CertaintyTable,
    pub posterior_table: CertaintyTable,
}

pub fn bayes_report(hypotheses: &CoEvent, reality: &CoEvent, prior: &BelievabilityDistribution) -> Result<BayesReport> {
    let matched = match_coevent(hypotheses, reality)?;
    let mu = mu_vector(hypotheses, reality)?;
    let Posterior { posterior, phi_prior, phi_post } = bra_posterior(prior, &mu)?;
    debug_assert_eq!(phi_prior, weighted_rows(&matched, prior));
    let refinement = minkowski_intersect(&labelling_of(hypotheses), &labelling_of(reality))?;
    let prior_table = certainty_table_over(&matched, &refinement, prior)?;
    let posterior_table = certainty_table_over(&matched, &refinement, &posterior)?;
    Ok(BayesReport {
        prior: prior.clone(),
        matched,
        mu,
        phi_prior,
        posterior,
        phi_post,
        refinement,
        prior_table,
        posterior_table,
    })
}

/// Ket-formula posteriors: `p_post(X) = p(X)·B(⟨X|) / Φ(R)` per terrace of
/// `R`, and `p_post_x = Σ_{X∋x} p_post(X)` per label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KetPosterior {
    pub labelling: Labelling,
    pub terraces: Vec<Rational>,
    pub labels: Vec<Rational>,
    pub certainty: Rational,
}

pub fn ket_posterior(r: &CoEvent, c: &CertaintySpace) -> Result<KetPosterior> {
    let certainty = crate::measures::certainty_of(r, c)?;
    if certainty.is_zero() {
        return Err(Error::UndefinedPosterior);
    }
    let labelling = labelling_of(r);
    let b = &c.believabilities;
    let terraces: Vec<Rational> = labelling
        .terraces()
        .iter()
        .map(|t| &t.probability * b.of_set(t.cover().expect("single generator")) / &certainty)
        .collect();
    let mut labels = vec![Rational::zero(); r.labels().len()];
    for (t, post) in labelling.terraces().iter().zip(&terraces) {
        for &x in t.cover().expect("single generator").indices() {
            labels[x] += post;
        }
    }
    Ok(KetPosterior { labelling, terraces, labels, certainty })
}

/// The bra-ket formula: the certainty table of `R` conditioned on `R`.
pub fn braket_posterior(r: &CoEvent, c: &CertaintySpace) -> Result<CertaintyTable> {
    condition_certainty(r, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::space::{labels, AtomSpace};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn doctor_space() -> Arc<AtomSpace> {
        Arc::new(AtomSpace::from_weights(vec![ratio(8, 200), ratio(2, 200), ratio(150, 200), ratio(40, 200)]).unwrap())
    }

    fn pair(sp: &Arc<AtomSpace>, h: [Vec<usize>; 2], r: [Vec<usize>; 2]) -> (CoEvent, CoEvent) {
        let [hx, hy] = h;
        let [rx, ry] = r;
        (
            CoEvent::from_rows(Arc::clone(sp), [("x", hx), ("y", hy)]).unwrap(),
            CoEvent::from_rows(Arc::clone(sp), [("x", rx), ("y", ry)]).unwrap(),
        )
    }

    fn half(h: &CoEvent) -> BelievabilityDistribution {
        BelievabilityDistribution::uniform(h.labels().to_vec()).unwrap()
    }

    #[test]
    fn identical_hypotheses_and_reality() {
        let sp = doctor_space();
        let (h, r) = pair(&sp, [vec![0, 1], vec![1, 2]], [vec![0, 1], vec![1, 2]]);
        let report = bayes_report(&h, &r, &half(&h)).unwrap();
        assert_eq!(report.mu.values(), &[int(1), int(1)]);
        assert_eq!(report.posterior, half(&h));
        assert_eq!(report.phi_prior, int(1));
        assert_eq!(report.phi_post, int(1));
    }

    #[test]
    fn total_disagreement_is_undefined() {
        let sp = doctor_space();
        let (h, r) = pair(&sp, [vec![0, 1], vec![1, 2]], [vec![2, 3], vec![0, 3]]);
        let mu = mu_vector(&h, &r).unwrap();
        assert_eq!(mu.values(), &[int(0), int(0)]);
        assert_eq!(bra_posterior(&half(&h), &mu), Err(Error::UndefinedPosterior));
    }

    #[test]
    fn doctor_third_example() {
        let sp = doctor_space();
        let (h, r) = pair(&sp, [vec![0, 1], vec![1, 2]], [vec![2], vec![1, 2]]);
        let report = bayes_report(&h, &r, &half(&h)).unwrap();
        assert_eq!(report.mu.values(), &[ratio(1, 5), int(1)]);
        assert_eq!(report.posterior.values(), &[ratio(1, 6), ratio(5, 6)]);
        assert_eq!(report.phi_prior, ratio(3, 5));
        assert_eq!(report.phi_post, ratio(13, 15));
        assert_eq!(report.posterior_table.at_atom("y", 2).unwrap(), Some(&ratio(750, 1200)));
        assert_eq!(report.posterior_table.at_atom("x", 3).unwrap(), Some(&ratio(40, 1200)));
        assert_eq!(report.posterior_table.total(), ratio(13, 15));
        assert_eq!(report.prior_table.total(), ratio(3, 5));
        // Over M's own coarser labelling the three y-only atoms merge.
        let coarse = posterior_certainty(&report.matched, &report.posterior).unwrap();
        assert_eq!(coarse.at_atom("y", 2).unwrap(), Some(&ratio(800, 1200)));
        assert_eq!(coarse.total(), ratio(13, 15));
    }

    #[test]
    fn ket_formula_on_doctor_hypotheses() {
        let sp = doctor_space();
        let (h, _) = pair(&sp, [vec![0, 1], vec![1, 2]], [vec![], vec![]]);
        let c = CertaintySpace::new(Arc::clone(&sp), half(&h));
        let k = ket_posterior(&h, &c).unwrap();
        assert_eq!(k.certainty, ratio(81, 200));
        assert_eq!(k.terraces, vec![ratio(4, 81), ratio(2, 81), ratio(75, 81), int(0)]);
        assert_eq!(k.labels, vec![ratio(6, 81), ratio(77, 81)]);
        assert_eq!(rational::sum(&k.terraces), int(1));
        assert_eq!(braket_posterior(&h, &c).unwrap().at_atom("x", 0).unwrap(), Some(&ratio(4, 81)));
    }

    #[test]
    fn ket_formula_identities() {
        let sp = Arc::new(AtomSpace::from_weights(vec![ratio(1, 3), ratio(2, 3)]).unwrap());
        let one = CoEvent::from_rows(Arc::clone(&sp), [("only", vec![0, 1])]).unwrap();
        let c = CertaintySpace::new(Arc::clone(&sp), half(&one));
        assert_eq!(ket_posterior(&one, &c).unwrap().terraces, vec![int(1)]);

        let full = CoEvent::full(Arc::clone(&sp), labels(["x", "y"]).unwrap()).unwrap();
        let c = CertaintySpace::new(sp, half(&full));
        assert_eq!(ket_posterior(&full, &c).unwrap().terraces, vec![int(1)]);
        let empty = CoEvent::empty(Arc::clone(&c.space), full.labels().to_vec()).unwrap();
        assert_eq!(ket_posterior(&empty, &c), Err(Error::UndefinedPosterior));
    }

    fn grid(m: usize, n: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
        prop::collection::vec(prop::collection::vec(any::<bool>(), n), m)
    }

    fn relation(sp: &Arc<AtomSpace>, cells: &[Vec<bool>]) -> CoEvent {
        let ids: Vec<String> = (0..cells.len()).map(|i| format!("h{i}")).collect();
        let rows = cells.iter().map(|r| (0..r.len()).filter(|&a| r[a]).collect()).collect();
        CoEvent::new(Arc::clone(sp), labels(&ids).unwrap(), rows).unwrap()
    }

    proptest! {
        #[test]
        fn posterior_properties(h in grid(4, 10), r in grid(4, 10), b in prop::collection::vec(1u8..6, 4), k in 1u8..9) {
            let sp = Arc::new(AtomSpace::uniform(10).unwrap());
            let (h, r) = (relation(&sp, &h), relation(&sp, &r));
            let total: i64 = b.iter().map(|&v| v as i64).sum();
            let prior = BelievabilityDistribution::new(h.labels().to_vec(), b.iter().map(|&v| ratio(v as i64, total)).collect()).unwrap();
            let mu = mu_vector(&h, &r).unwrap();
            let c = CertaintySpace::new(Arc::clone(&sp), prior.clone());
            let m = match_coevent(&h, &r).unwrap();
            let phi = crate::measures::certainty_of(&m, &c).unwrap();
            match bra_posterior(&prior, &mu) {
                Err(e) => {
                    prop_assert_eq!(e, Error::UndefinedPosterior);
                    prop_assert!(phi.is_zero());
                }
                Ok(post) => {
                    prop_assert_eq!(&post.phi_prior, &phi);
                    prop_assert_eq!(rational::sum(post.posterior.values()), int(1));
                    prop_assert!(post.phi_post >= post.phi_prior);
                    prop_assert_eq!(posterior_certainty(&m, &post.posterior).unwrap().total(), post.phi_post.clone());
                    // Scaling μ leaves the posterior alone.
                    let scaled = MatchVector::new(mu.labels().to_vec(), mu.values().iter().map(|v| v * ratio(k as i64, 9)).collect()).unwrap();
                    prop_assert_eq!(bra_posterior(&prior, &scaled).unwrap().posterior, post.posterior);
                }
            }
        }

        #[test]
        fn unit_match_keeps_the_prior(b in prop::collection::vec(0u8..6, 5)) {
            prop_assume!(b.iter().any(|&v| v > 0));
            let total: i64 = b.iter().map(|&v| v as i64).sum();
            let ls = labels(["a", "b", "c", "d", "e"]).unwrap();
            let prior = BelievabilityDistribution::new(ls.clone(), b.iter().map(|&v| ratio(v as i64, total)).collect()).unwrap();
            let mu = MatchVector::new(ls, vec![int(1); 5]).unwrap();
            prop_assert_eq!(bra_posterior(&prior, &mu).unwrap().posterior, prior);
        }
    }
}
