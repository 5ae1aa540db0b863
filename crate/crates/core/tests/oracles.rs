//! Randomized checks against brute-force, cell-by-cell oracles.

use std::sync::Arc;

use coevent::bayes::posterior_certainty_over;
use coevent::measures::certainty_table_over;
use coevent::rational::{int, ratio, Rational};
use coevent::recurrence::step;
use coevent::{
    bra_posterior, certainty_of, complement, labelling_of, limit_believability, match_coevent, minkowski_intersect,
    mu_vector, run, AtomSpace, BelievabilityDistribution, CertaintySpace, CoEvent, RunOptions,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Instance {
    space: Arc<AtomSpace>,
    h: CoEvent,
    r: CoEvent,
    b: BelievabilityDistribution,
}

fn weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    // Some atoms get weight zero on purpose.
    let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(0..5)).collect();
    let total: i64 = raw.iter().sum::<i64>().max(1);
    if raw.iter().all(|&w| w == 0) {
        return vec![ratio(1, n as i64); n];
    }
    raw.into_iter().map(|w| ratio(w, total)).collect()
}

fn coevent(rng: &mut ChaCha8Rng, space: &Arc<AtomSpace>, names: &[String], density: f64) -> CoEvent {
    let rows = names.iter().map(|x| (x.as_str(), (0..space.len()).filter(|_| rng.gen_bool(density)).collect()));
    CoEvent::from_rows(Arc::clone(space), rows).unwrap()
}

fn instance(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(1..9);
    let k = rng.gen_range(1..5);
    let space = Arc::new(AtomSpace::from_weights(weights(rng, n)).unwrap());
    let names: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
    let h = coevent(rng, &space, &names, 0.5);
    let r = coevent(rng, &space, &names, 0.5);
    let b = BelievabilityDistribution::new(h.labels().to_vec(), weights(rng, k)).unwrap();
    Instance { space, h, r, b }
}

fn cell_phi(s: &CoEvent, space: &AtomSpace, b: &BelievabilityDistribution) -> Rational {
    let mut total = int(0);
    for x in 0..s.labels().len() {
        for a in 0..space.len() {
            if s.contains(x, a) {
                total += b.value(x) * space.weight(a);
            }
        }
    }
    total
}

fn cell_mu(h: &CoEvent, r: &CoEvent, x: usize) -> Rational {
    let space = h.space();
    (0..space.len()).filter(|&a| h.contains(x, a) == r.contains(x, a)).map(|a| space.weight(a).clone()).sum()
}

#[test]
fn certainty_is_a_sum_over_cells() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let i = instance(&mut rng);
        let c = CertaintySpace::new(Arc::clone(&i.space), i.b.clone());
        for s in [&i.h, &i.r] {
            let phi = certainty_of(s, &c).unwrap();
            assert_eq!(phi, cell_phi(s, &i.space, &i.b));
            assert_eq!(phi.clone() + certainty_of(&complement(s), &c).unwrap(), int(1));
            // Certainty is one exactly when every cell of positive weight is present.
            let saturated = (0..s.labels().len()).all(|x| {
                i.b.value(x).is_zero()
                    || (0..i.space.len()).all(|a| i.space.weight(a).is_zero() || s.contains(x, a))
            });
            assert_eq!(phi == int(1), saturated);
        }
    }
}

#[test]
fn tables_agree_with_cells_on_any_refinement() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let i = instance(&mut rng);
        let c = CertaintySpace::new(Arc::clone(&i.space), i.b.clone());
        let m = match_coevent(&i.h, &i.r).unwrap();
        let fine = minkowski_intersect(&labelling_of(&i.h), &labelling_of(&i.r)).unwrap();
        let table = certainty_table_over(&m, &fine, &i.b).unwrap();
        assert_eq!(table.total(), cell_phi(&m, &i.space, &i.b));
        assert_eq!(table.total(), certainty_of(&m, &c).unwrap());
        for (x, label) in m.labels().iter().enumerate() {
            for (t, terrace) in fine.terraces().iter().enumerate() {
                let inside = terrace.atoms.iter().all(|&a| m.contains(x, a));
                let expected = inside.then(|| i.b.value(x) * &terrace.probability);
                assert_eq!(table.get(x, t).cloned(), expected, "{label} terrace {t}");
            }
        }
        assert!(labelling_of(&m).is_refined_by(&fine));
        assert_eq!(certainty_table_over(&m, &labelling_of(&m), &i.b).unwrap().total(), table.total());
    }
}

#[test]
fn posterior_matches_direct_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    for _ in 0..300 {
        let i = instance(&mut rng);
        let mu = mu_vector(&i.h, &i.r).unwrap();
        for x in 0..mu.values().len() {
            assert_eq!(mu.values()[x], cell_mu(&i.h, &i.r, x));
        }
        let m = match_coevent(&i.h, &i.r).unwrap();
        let phi = cell_phi(&m, &i.space, &i.b);
        match bra_posterior(&i.b, &mu) {
            Err(_) => assert!(phi.is_zero()),
            Ok(post) => {
                checked += 1;
                assert_eq!(post.phi_prior, phi);
                for x in 0..mu.values().len() {
                    assert_eq!(post.posterior.value(x), &(i.b.value(x) * &mu.values()[x] / &phi));
                }
                assert_eq!(post.phi_post, cell_phi(&m, &i.space, &post.posterior));
                let fine = minkowski_intersect(&labelling_of(&i.h), &labelling_of(&i.r)).unwrap();
                let table = posterior_certainty_over(&m, &fine, &post.posterior).unwrap();
                assert_eq!(table.total(), post.phi_post);
            }
        }
    }
    assert!(checked > 100, "too few defined posteriors: {checked}");
}

#[test]
fn run_matches_repeated_steps() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..60 {
        let i = instance(&mut rng);
        let mu = mu_vector(&i.h, &i.r).unwrap();
        let options = RunOptions { eps: ratio(1, 1_000_000), n_max: 40, trace: true };
        let Ok(trace) = run(&i.b, &mu, &options) else { continue };
        let mut b = i.b.clone();
        for recorded in &trace.steps {
            let (next, phi) = step(&b, &mu).unwrap();
            assert_eq!(recorded.believabilities, next);
            assert_eq!(recorded.certainty, phi);
            b = next;
        }
        assert_eq!(trace.steps.len(), trace.n_final);
    }
}

#[test]
fn limits_concentrate_on_best_matches() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..200 {
        let i = instance(&mut rng);
        let mu = mu_vector(&i.h, &i.r).unwrap();
        let Ok(limit) = limit_believability(&i.b, &mu) else { continue };
        let best = (0..mu.values().len())
            .filter(|&x| !i.b.value(x).is_zero())
            .map(|x| mu.values()[x].clone())
            .max()
            .unwrap();
        let x_max: Vec<usize> = (0..mu.values().len())
            .filter(|&x| !i.b.value(x).is_zero() && mu.values()[x] == best)
            .collect();
        assert_eq!(limit.x_max.indices(), x_max.as_slice());
        let mass: Rational = x_max.iter().map(|&x| i.b.value(x).clone()).sum();
        for x in 0..mu.values().len() {
            let expected = if x_max.contains(&x) { i.b.value(x) / &mass } else { int(0) };
            assert_eq!(limit.limit_believabilities.value(x), &expected);
        }
        assert_eq!(limit.limit_certainty, best);
    }
}

#[test]
fn full_reality_matches_hypotheses_cells() {
    // With R full, μ_x is the probability of H_x.
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..100 {
        let i = instance(&mut rng);
        let full = CoEvent::full(Arc::clone(&i.space), i.h.labels().to_vec()).unwrap();
        let mu = mu_vector(&i.h, &full).unwrap();
        for (x, row) in i.h.rows().iter().enumerate() {
            let p: Rational = row.iter().map(|a| i.space.weight(a).clone()).sum();
            assert_eq!(mu.values()[x], p);
            assert_eq!(p, row.probability(&i.space));
        }
    }
}
