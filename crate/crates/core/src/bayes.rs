//! Exact probability distributions over a space's worlds, the belief function
//! obtained by conditioning a prior on accumulated true evidence, and the
//! checks that decide whether a piece of evidence may be absorbed that way.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::proposition::{ModelSet, Sentence, Space, World};

/// Tolerance for normalization and equality of probabilities.
pub const TOLERANCE: f64 = 1e-9;

/// Normalized, non-negative weights over every world of a space.
///
/// A distribution is the only trace its background knowledge leaves: two
/// priors built from different reasons but with the same weights are the
/// same value.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    space: Arc<Space>,
    weights: Vec<f64>,
}

impl Distribution {
    /// Normalizes raw world weights. Worlds not listed get weight zero.
    pub fn from_weights<I>(space: Arc<Space>, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (World, f64)>,
    {
        let mut weights = vec![0.0; space.world_count()];
        let mut seen = vec![false; space.world_count()];
        for (world, w) in raw {
            if world.width() != space.atoms().len() {
                return Err(Error::InvalidPrior("world from a different space".into()));
            }
            if seen[world.index()] {
                return Err(Error::InvalidPrior(format!(
                    "world `{}` listed twice",
                    space.describe(world)
                )));
            }
            seen[world.index()] = true;
            weights[world.index()] = w;
        }
        Self::from_vec(space, weights)
    }

    /// Normalizes raw weights given in canonical world order.
    pub fn from_vec(space: Arc<Space>, raw: Vec<f64>) -> Result<Self> {
        if raw.len() != space.world_count() {
            return Err(Error::InvalidPrior(format!(
                "expected {} weights, got {}",
                space.world_count(),
                raw.len()
            )));
        }
        if let Some(bad) = raw.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidPrior(format!("weight {bad} is negative or not finite")));
        }
        let total: f64 = raw.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidPrior("all weights are zero".into()));
        }
        Ok(Distribution {
            space,
            weights: raw.into_iter().map(|w| w / total).collect(),
        })
    }

    pub fn uniform(space: Arc<Space>) -> Self {
        let n = space.world_count();
        Distribution {
            weights: vec![1.0 / n as f64; n],
            space,
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    /// Weights in canonical world order.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, world: World) -> f64 {
        self.weights[world.index()]
    }

    /// Worlds with strictly positive weight.
    pub fn support(&self) -> ModelSet {
        ModelSet::from_indices(
            self.weights.len(),
            self.weights
                .iter()
                .enumerate()
                .filter(|(_, &w)| w > 0.0)
                .map(|(i, _)| i),
        )
    }

    pub(crate) fn mass(&self, set: &ModelSet) -> f64 {
        set.iter().map(|i| self.weights[i]).sum()
    }

    pub fn prob(&self, s: &Sentence) -> Result<f64> {
        Ok(self.mass(&self.space.models(s)?))
    }

    /// `P(x | y) = P(x ∧ y) / P(y)`.
    pub fn conditional(&self, x: &Sentence, y: &Sentence) -> Result<f64> {
        let given = self.space.models(y)?;
        let joint = self.space.models(x)?.intersection(&given);
        let denominator = self.mass(&given);
        if denominator <= 0.0 {
            return Err(Error::ZeroCondition(y.to_string()));
        }
        Ok(self.mass(&joint) / denominator)
    }

    /// The distribution conditioned on `y`, as a new prior over the same space.
    pub fn condition_on(&self, y: &Sentence) -> Result<Distribution> {
        let given = self.space.models(y)?;
        let denominator = self.mass(&given);
        if denominator <= 0.0 {
            return Err(Error::ZeroCondition(y.to_string()));
        }
        let weights = (0..self.weights.len())
            .map(|i| {
                if given.contains(i) {
                    self.weights[i] / denominator
                } else {
                    0.0
                }
            })
            .collect();
        Ok(Distribution {
            space: Arc::clone(&self.space),
            weights,
        })
    }

    /// Largest pointwise weight difference; distributions over different
    /// spaces are infinitely far apart.
    pub fn max_abs_diff(&self, other: &Distribution) -> f64 {
        if self.space != other.space {
            return f64::INFINITY;
        }
        self.weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Distribution, tolerance: f64) -> bool {
        self.max_abs_diff(other) <= tolerance
    }
}

/// A prior together with the true evidence absorbed into it so far.
///
/// The belief at time `t` is the prior conditioned on the conjunction of the
/// first `t` pieces of evidence. The log is kept alongside the conjunction so
/// explicit conditions stay distinguishable from the prior's implicit one.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefState {
    prior: Distribution,
    evidence_log: Vec<Sentence>,
    k_conj: Sentence,
}

impl BeliefState {
    pub fn new(prior: Distribution) -> Self {
        BeliefState {
            prior,
            evidence_log: Vec::new(),
            k_conj: Sentence::True,
        }
    }

    pub fn prior(&self) -> &Distribution {
        &self.prior
    }

    pub fn space(&self) -> &Arc<Space> {
        self.prior.space()
    }

    pub fn evidence_log(&self) -> &[Sentence] {
        &self.evidence_log
    }

    /// Conjunction of all accepted evidence; `true` at time 0.
    pub fn evidence(&self) -> &Sentence {
        &self.k_conj
    }

    /// Number of pieces of evidence absorbed.
    pub fn time(&self) -> usize {
        self.evidence_log.len()
    }

    pub fn bel(&self, x: &Sentence) -> Result<f64> {
        self.prior.conditional(x, &self.k_conj)
    }

    pub fn bel_conditional(&self, x: &Sentence, y: &Sentence) -> Result<f64> {
        let denominator = self.bel(y)?;
        if denominator <= 0.0 {
            return Err(Error::ZeroCondition(y.to_string()));
        }
        Ok(self.bel(&x.clone().and(y.clone()))? / denominator)
    }

    /// Absorbs `a` as true evidence. The receiver is left untouched.
    pub fn conditionalize(&self, a: &Sentence) -> Result<BeliefState> {
        if self.bel(a)? <= 0.0 {
            return Err(Error::ZeroCondition(a.to_string()));
        }
        let mut evidence_log = self.evidence_log.clone();
        evidence_log.push(a.clone());
        Ok(BeliefState {
            prior: self.prior.clone(),
            k_conj: Sentence::conjunction(evidence_log.iter().cloned()),
            evidence_log,
        })
    }

    /// Current beliefs as a distribution over worlds.
    pub fn posterior(&self) -> Distribution {
        self.prior
            .condition_on(&self.k_conj)
            .expect("belief state invariant: evidence has positive prior probability")
    }
}

/// Outcome of one admissibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Ok,
    Failed(String),
}

impl Check {
    pub fn is_ok(&self) -> bool {
        matches!(self, Check::Ok)
    }
}

/// The three conditions under which evidence `A[m]` may be absorbed by
/// conditioning: `m` is 0 or 1, `A` is a sentence of the space, and the
/// sentence to condition on has positive belief.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreconditionReport {
    pub binary: Check,
    pub in_space: Check,
    pub positive_probability: Check,
}

impl PreconditionReport {
    pub fn admissible(&self) -> bool {
        self.binary.is_ok() && self.in_space.is_ok() && self.positive_probability.is_ok()
    }

    pub fn failures(&self) -> impl Iterator<Item = (&'static str, &str)> {
        [
            ("binary", &self.binary),
            ("in-space", &self.in_space),
            ("positive-probability", &self.positive_probability),
        ]
        .into_iter()
        .filter_map(|(name, check)| match check {
            Check::Ok => None,
            Check::Failed(reason) => Some((name, reason.as_str())),
        })
    }
}

impl fmt::Display for PreconditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [
            ("binary", &self.binary),
            ("in-space", &self.in_space),
            ("positive-probability", &self.positive_probability),
        ];
        for (i, (name, check)) in parts.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            match check {
                Check::Ok => write!(f, "{name} ok")?,
                Check::Failed(reason) => write!(f, "{name} FAILED ({reason})")?,
            }
        }
        Ok(())
    }
}

/// The sentence actually conditioned on for evidence `A[m]`: `A` when `m = 1`,
/// `¬A` when `m = 0`, and `A` itself otherwise.
pub fn conditioning_sentence(a: &Sentence, m: f64) -> Sentence {
    if m == 0.0 {
        a.clone().not()
    } else {
        a.clone()
    }
}

/// Classifies evidence `A[m]` against the three admissibility conditions.
/// Never fails: every problem becomes a failing check with a reason.
pub fn check_preconditions(st: &BeliefState, a: &Sentence, m: f64) -> PreconditionReport {
    let binary = if m == 0.0 || m == 1.0 {
        Check::Ok
    } else {
        Check::Failed(format!("m = {m} is not 0 or 1"))
    };
    let in_space = match st.space().check(a) {
        Ok(()) => Check::Ok,
        Err(Error::MalformedSentence(atom)) => Check::Failed(format!("atom `{atom}` is not in the proposition space")),
        Err(e) => Check::Failed(e.to_string()),
    };
    let positive_probability = if in_space.is_ok() {
        let target = conditioning_sentence(a, m);
        match st.bel(&target) {
            Ok(p) if p > 0.0 => Check::Ok,
            Ok(_) => Check::Failed(format!("BEL({target}) = 0")),
            Err(e) => Check::Failed(e.to_string()),
        }
    } else {
        Check::Failed("sentence is outside the proposition space".into())
    };
    PreconditionReport {
        binary,
        in_space,
        positive_probability,
    }
}

/// Result of the exhaustive conditioning-capacity search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainBound {
    /// Longest sequence of non-redundant conditionalizations.
    pub max_length: usize,
    /// Number of sentences up to logical equivalence, `2^(2^n)`.
    pub s_size: u64,
}

/// Largest atom count `max_conditioning_chain` accepts.
pub const MAX_CHAIN_ATOMS: usize = 4;

/// Exhaustively finds the longest chain `a₁, a₂, …` of conditionalizations
/// starting from `d` in which every step is informative (`0 < BEL(aᵢ) < 1`).
///
/// Conditioning on `a` replaces the support by `support ∩ models(a)`, and the
/// step is informative exactly when that intersection is a non-empty proper
/// subset of the support. The search therefore ranges over every reachable
/// support; each non-empty proper subset stands for the class of sentences
/// producing it.
pub fn max_conditioning_chain(d: &Distribution) -> Result<ChainBound> {
    let n = d.space().atoms().len();
    if n > MAX_CHAIN_ATOMS {
        return Err(Error::SpaceTooLarge {
            atoms: n,
            max: MAX_CHAIN_ATOMS,
        });
    }
    let support = d.support().iter().fold(0u32, |m, i| m | (1 << i));
    let mut memo = vec![UNKNOWN; 1 << d.space().world_count()];
    Ok(ChainBound {
        max_length: longest_chain(support, &mut memo),
        s_size: 1u64 << (1u32 << n),
    })
}

const UNKNOWN: u8 = u8::MAX;

fn longest_chain(support: u32, memo: &mut [u8]) -> usize {
    if memo[support as usize] != UNKNOWN {
        return memo[support as usize] as usize;
    }
    let mut best = 0;
    let mut sub = support.wrapping_sub(1) & support;
    while sub != 0 {
        best = best.max(1 + longest_chain(sub, memo));
        sub = (sub - 1) & support;
    }
    memo[support as usize] = best as u8;
    best
}
