//! Recurrent Bayes updating with a fixed match vector.
//!
//! Feeding the posterior back in as the next prior gives
//! `b⁽ⁿ⁺¹⁾_x = b⁽ⁿ⁾_x μ_x / Φ⁽ⁿ⁾` with `Φ⁽ⁿ⁾ = Σ b⁽ⁿ⁾_x μ_x`, so
//! `b⁽ⁿ⁾ ∝ b⁽⁰⁾ μⁿ`. Belief flows to the labels of maximal `μ` within the
//! prior's support and the certainty climbs to that maximum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bayes::{bra_posterior, dot, MatchVector};
use crate::error::{Error, Result};
use crate::measures::BelievabilityDistribution;
use crate::rational::{self, Rational};
use crate::space::LabelSet;

/// One Bayes step: `(b', Σ b'μ)`.
pub fn step(b: &BelievabilityDistribution, mu: &MatchVector) -> Result<(BelievabilityDistribution, Rational)> {
    let post = bra_posterior(b, mu)?;
    Ok((post.posterior, post.phi_post))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    /// Stop once the largest believability change drops below this.
    pub eps: Rational,
    pub n_max: usize,
    /// Keep every step rather than only the first and last.
    pub trace: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { eps: rational::pow10_inv(12), n_max: 1_000_000, trace: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationStep {
    pub n: usize,
    pub believabilities: BelievabilityDistribution,
    /// `Φ⁽ⁿ⁾ = Σ b⁽ⁿ⁾_x μ_x`.
    pub certainty: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationTrace {
    /// The prior, as step 0.
    pub initial: IterationStep,
    /// Steps `1..=n_final`, or just the first and last without tracing.
    pub steps: Vec<IterationStep>,
    pub converged: bool,
    pub n_final: usize,
}

impl IterationTrace {
    pub fn last(&self) -> &IterationStep {
        self.steps.last().unwrap_or(&self.initial)
    }
}

/// Iterate [`step`] until the max-norm change is below `eps` or `n_max`
/// steps have run. The comparison against `eps` is exact.
///
/// Internally `b⁽ⁿ⁾` is carried as integer weights `β_x α_xⁿ` over a common
/// denominator, so no step pays for a gcd; rationals are only built for the
/// steps that are kept.
pub fn run(b0: &BelievabilityDistribution, mu: &MatchVector, options: &RunOptions) -> Result<IterationTrace> {
    if !options.eps.is_positive() {
        return Err(Error::InvalidSettings("eps must be positive".into()));
    }
    if options.n_max == 0 {
        return Err(Error::InvalidSettings("at least one step is required".into()));
    }
    if b0.labels() != mu.labels() {
        return Err(Error::LabelMismatch {
            left: crate::space::label_names(b0.labels()),
            right: crate::space::label_names(mu.labels()),
        });
    }
    let initial = IterationStep { n: 0, believabilities: b0.clone(), certainty: dot(b0, mu) };
    let (mut weights, _) = common_numerators(b0.values());
    let (alpha, scale) = common_numerators(mu.values());
    let (eps_num, eps_den) = (options.eps.numer(), options.eps.denom());

    let record = |n: usize, w: &[BigInt], total: &BigInt| {
        let values = w.iter().map(|x| Rational::new(x.clone(), total.clone())).collect();
        let believabilities = BelievabilityDistribution::from_parts(b0.labels().to_vec(), values);
        let reach: BigInt = w.iter().zip(&alpha).map(|(w, a)| w * a).sum();
        IterationStep { n, believabilities, certainty: Rational::new(reach, &scale * total) }
    };

    let mut total: BigInt = weights.iter().sum();
    let mut steps: Vec<IterationStep> = Vec::new();
    let mut converged = false;
    let mut n_final = 0;
    for n in 1..=options.n_max {
        let next: Vec<BigInt> = weights.iter().zip(&alpha).map(|(w, a)| w * a).collect();
        let next_total: BigInt = next.iter().sum();
        if next_total.is_zero() {
            return Err(Error::UndefinedPosterior);
        }
        // |b'_x − b_x| = |w_x (α_x S − S')| / (S S')
        let spread = weights
            .iter()
            .zip(&alpha)
            .map(|(w, a)| (w * (a * &total - &next_total)).abs())
            .max()
            .unwrap_or_default();
        let settled = eps_den * spread < eps_num * &total * &next_total;
        weights = next;
        total = next_total;
        n_final = n;
        if options.trace || n == 1 {
            steps.push(record(n, &weights, &total));
        }
        if settled {
            converged = true;
            break;
        }
    }
    if !options.trace && n_final > 1 {
        steps.push(record(n_final, &weights, &total));
    }
    Ok(IterationTrace { initial, steps, converged, n_final })
}

/// Integers `k_i` and `d` with `values[i] = k_i / d`.
fn common_numerators(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let d = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ks = values.iter().map(|v| v.numer() * (&d / v.denom())).collect();
    (ks, d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitResult {
    pub x_max: LabelSet,
    pub limit_believabilities: BelievabilityDistribution,
    pub limit_certainty: Rational,
}

/// The fixed point the iteration approaches: the prior restricted to the
/// labels of maximal `μ` within its support, renormalized.
pub fn limit_believability(b0: &BelievabilityDistribution, mu: &MatchVector) -> Result<LimitResult> {
    if b0.labels() != mu.labels() {
        return Err(Error::LabelMismatch {
            left: crate::space::label_names(b0.labels()),
            right: crate::space::label_names(mu.labels()),
        });
    }
    let support = b0.support();
    let best = support.indices().iter().map(|&x| &mu.values()[x]).max().cloned().unwrap_or_else(Rational::zero);
    if best.is_zero() {
        return Err(Error::EmptySupport);
    }
    let x_max: LabelSet = support.indices().iter().copied().filter(|&x| mu.values()[x] == best).collect();
    let weights = (0..b0.values().len())
        .map(|x| if x_max.contains(x) { b0.value(x).clone() } else { Rational::zero() })
        .collect();
    let limit = BelievabilityDistribution::normalized(b0.labels().to_vec(), weights).ok_or(Error::EmptySupport)?;
    let mass = b0.of_set(&x_max);
    let limit_certainty =
        x_max.indices().iter().fold(Rational::zero(), |acc, &x| acc + b0.value(x) * &mu.values()[x]) / mass;
    debug_assert_eq!(limit_certainty, best);
    Ok(LimitResult { x_max, limit_believabilities: limit, limit_certainty })
}

/// `lim Φ⁽ⁿ⁾`, equal to the largest `μ_x` over the prior's support.
pub fn limit_certainty(b0: &BelievabilityDistribution, mu: &MatchVector) -> Result<Rational> {
    Ok(limit_believability(b0, mu)?.limit_certainty)
}
