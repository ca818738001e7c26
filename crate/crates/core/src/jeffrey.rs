//! Soft evidence: moving a sentence's probability to a target value while
//! keeping every conditional given that sentence (and given its negation)
//! fixed. Two routes are provided, direct reweighting and the mixture of
//! conditionals induced by an unnamed "virtual" observation; they agree.
//!
//! Both are updating operations: the target overrides whatever the prior
//! believed about the sentence.

use std::sync::Arc;

use crate::bayes::{Distribution, TOLERANCE};
use crate::error::{Error, Result};
use crate::proposition::Sentence;

/// "The probability of `a` should become `m`."
#[derive(Debug, Clone, PartialEq)]
pub struct SoftEvidence {
    a: Sentence,
    m: f64,
}

impl SoftEvidence {
    pub fn new(a: Sentence, m: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&m) {
            return Err(Error::InvalidProbability(m));
        }
        Ok(SoftEvidence { a, m })
    }

    pub fn sentence(&self) -> &Sentence {
        &self.a
    }

    pub fn target(&self) -> f64 {
        self.m
    }
}

struct Split {
    inside: crate::proposition::ModelSet,
    p_inside: f64,
    p_outside: f64,
}

fn split(d: &Distribution, ev: &SoftEvidence) -> Result<Split> {
    let inside = d.space().models(&ev.a)?;
    let p_inside = d.mass(&inside);
    let p_outside = d.mass(&inside.complement());
    // A zero-mass side is only acceptable when it receives no mass.
    if (ev.m > 0.0 && p_inside <= 0.0) || (ev.m < 1.0 && p_outside <= 0.0) {
        return Err(Error::UndefinedConditional(ev.a.to_string()));
    }
    Ok(Split {
        inside,
        p_inside,
        p_outside,
    })
}

/// Jeffrey's rule by direct reweighting: worlds satisfying `a` are scaled by
/// `m / P(a)`, the rest by `(1 - m) / P(¬a)`.
pub fn jeffrey_update(d: &Distribution, ev: &SoftEvidence) -> Result<Distribution> {
    let Split {
        inside,
        p_inside,
        p_outside,
    } = split(d, ev)?;
    let weights = d
        .weights()
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            if inside.contains(i) {
                if ev.m == 0.0 {
                    0.0
                } else {
                    w * ev.m / p_inside
                }
            } else if ev.m == 1.0 {
                0.0
            } else {
                w * (1.0 - ev.m) / p_outside
            }
        })
        .collect();
    Distribution::from_vec(Arc::clone(d.space()), weights)
}

/// The virtual-evidence route: `P(x | V) = P(x | E)·m + P(x | ¬E)·(1 - m)`,
/// taking `x` to be each world in turn. Valid when `V` bears on `x` only
/// through `E`.
pub fn virtual_update(d: &Distribution, ev: &SoftEvidence) -> Result<Distribution> {
    split(d, ev)?;
    let n = d.weights().len();
    let mut weights = vec![0.0; n];
    if ev.m > 0.0 {
        let given = d.condition_on(&ev.a)?;
        for (acc, w) in weights.iter_mut().zip(given.weights()) {
            *acc += w * ev.m;
        }
    }
    if ev.m < 1.0 {
        let given_not = d.condition_on(&ev.a.clone().not())?;
        for (acc, w) in weights.iter_mut().zip(given_not.weights()) {
            *acc += w * (1.0 - ev.m);
        }
    }
    Distribution::from_vec(Arc::clone(d.space()), weights)
}

/// Converts a likelihood ratio `λ = P(E|V) / P(E|¬V)` into the posterior
/// target `P(E|V) = λ·P(E) / (λ·P(E) + 1 - P(E))`.
pub fn likelihood_target(d: &Distribution, e: &Sentence, ratio: f64) -> Result<f64> {
    if !ratio.is_finite() || ratio < 0.0 {
        return Err(Error::InvalidLikelihoodRatio(ratio));
    }
    let p = d.prob(e)?;
    let denominator = ratio * p + (1.0 - p);
    if denominator <= 0.0 {
        return Err(Error::UndefinedConditional(e.to_string()));
    }
    Ok((ratio * p / denominator).clamp(0.0, 1.0))
}

/// Virtual evidence given as a likelihood ratio.
pub fn likelihood_update(d: &Distribution, e: &Sentence, ratio: f64) -> Result<Distribution> {
    let m = likelihood_target(d, e, ratio)?;
    virtual_update(d, &SoftEvidence::new(e.clone(), m)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceReport {
    pub prior_opinion: f64,
    pub posterior_opinion: f64,
    /// The posterior equals the incoming target regardless of the prior.
    pub dominated: bool,
}

pub fn dominance_probe(d: &Distribution, ev: &SoftEvidence) -> Result<DominanceReport> {
    let prior_opinion = d.prob(&ev.a)?;
    let posterior_opinion = jeffrey_update(d, ev)?.prob(&ev.a)?;
    Ok(DominanceReport {
        prior_opinion,
        posterior_opinion,
        dominated: (posterior_opinion - ev.m).abs() < TOLERANCE,
    })
}
