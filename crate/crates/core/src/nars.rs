//! Two-number truth values for inheritance statements `S ⊂ P`.
//!
//! Frequency `f` is the proportion of positive cases among the checked
//! ones. Confidence `c = n / (n + k)` grows with the amount of evidence and
//! never reaches 1; equivalently, evidence weight `w = c / (1 - c) = n / k`.
//! Judgments from disjoint sources are revised (evidence pooled); judgments
//! sharing a source are resolved by keeping the more confident one.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::proposition::is_identifier;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruthValue {
    f: f64,
    c: f64,
}

impl TruthValue {
    pub fn new(f: f64, c: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&f) || !(0.0..=1.0).contains(&c) {
            return Err(Error::InvalidTruthValue { f, c });
        }
        if c == 1.0 {
            return Err(Error::AbsoluteConfidence(c));
        }
        Ok(TruthValue { f, c })
    }

    pub fn frequency(&self) -> f64 {
        self.f
    }

    pub fn confidence(&self) -> f64 {
        self.c
    }

    /// Evidence weight `c / (1 - c)`.
    pub fn weight(&self) -> f64 {
        self.c / (1.0 - self.c)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", fixed6(self.f), fixed6(self.c))
    }
}

/// Six decimals, ties to even, with negative zero printed as zero.
pub fn fixed6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Evidence weight of a confidence value.
pub fn weight(c: f64) -> Result<f64> {
    if c.is_nan() || c < 0.0 {
        return Err(Error::InvalidTruthValue { f: 0.0, c });
    }
    if c >= 1.0 {
        return Err(Error::AbsoluteConfidence(c));
    }
    Ok(c / (1.0 - c))
}

/// Confidence of an evidence weight, `w / (w + 1)`.
pub fn confidence_of_weight(w: f64) -> f64 {
    w / (w + 1.0)
}

/// The evidential horizon `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Horizon(u32);

impl Horizon {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            Err(Error::InvalidHorizon)
        } else {
            Ok(Horizon(k))
        }
    }

    pub fn get(&self) -> u32 {
        self.0
    }

    fn value(&self) -> f64 {
        self.0 as f64
    }
}

impl Default for Horizon {
    fn default() -> Self {
        Horizon(2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(String);

impl Term {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_identifier(&name) {
            Ok(Term(name))
        } else {
            Err(Error::InvalidTerm(name))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `subject ⊂ predicate ⟨f, c⟩`, tagged with the sources it rests on.
#[derive(Debug, Clone, PartialEq)]
pub struct Judgment {
    subject: Term,
    predicate: Term,
    tv: TruthValue,
    base: BTreeSet<String>,
}

impl Judgment {
    pub fn new<I, S>(subject: Term, predicate: Term, tv: TruthValue, base: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let base: BTreeSet<String> = base.into_iter().map(Into::into).collect();
        if base.is_empty() {
            return Err(Error::EmptyBase);
        }
        Ok(Judgment {
            subject,
            predicate,
            tv,
            base,
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Term {
        &self.predicate
    }

    pub fn truth(&self) -> TruthValue {
        self.tv
    }

    pub fn base(&self) -> &BTreeSet<String> {
        &self.base
    }

    pub fn statement(&self) -> String {
        format!("{} -> {}", self.subject, self.predicate)
    }

    fn same_statement(&self, other: &Judgment) -> Result<()> {
        if self.subject == other.subject && self.predicate == other.predicate {
            Ok(())
        } else {
            Err(Error::NotCombinable(self.statement(), other.statement()))
        }
    }

    fn shares_source(&self, other: &Judgment) -> bool {
        !self.base.is_disjoint(&other.base)
    }

    fn merged_base(&self, other: &Judgment) -> BTreeSet<String> {
        self.base.union(&other.base).cloned().collect()
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {{", self.statement(), self.tv)?;
        for (i, src) in self.base.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(src)?;
        }
        f.write_str("}")
    }
}

/// `positive` successes out of `total` checked cases, under horizon `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvidenceCount {
    positive: u64,
    total: u64,
    k: Horizon,
}

impl EvidenceCount {
    pub fn new(positive: u64, total: u64, k: Horizon) -> Result<Self> {
        if positive > total {
            return Err(Error::InvalidEvidenceCount(format!(
                "{positive} positive cases out of {total}"
            )));
        }
        Ok(EvidenceCount { positive, total, k })
    }

    pub fn positive(&self) -> u64 {
        self.positive
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn horizon(&self) -> Horizon {
        self.k
    }
}

/// `f = m / n`, `c = n / (n + k)`.
pub fn truth_from_counts(ec: EvidenceCount) -> Result<TruthValue> {
    if ec.total == 0 {
        return Err(Error::UndefinedFrequency);
    }
    let n = ec.total as f64;
    TruthValue::new(ec.positive as f64 / n, n / (n + ec.k.value()))
}

/// Revision: pools the evidence of two judgments about the same statement
/// drawn from disjoint sources. Symmetric in its arguments.
pub fn revise(j1: &Judgment, j2: &Judgment) -> Result<Judgment> {
    j1.same_statement(j2)?;
    if j1.shares_source(j2) {
        return Err(Error::CorrelativeSources);
    }
    let (w1, w2) = (j1.tv.weight(), j2.tv.weight());
    let w = w1 + w2;
    if w <= 0.0 {
        return Err(Error::NoEvidence);
    }
    let f = (w1 * j1.tv.f + w2 * j2.tv.f) / w;
    let tv = TruthValue::new(f.clamp(0.0, 1.0), confidence_of_weight(w))?;
    Ok(Judgment {
        subject: j1.subject.clone(),
        predicate: j1.predicate.clone(),
        tv,
        base: j1.merged_base(j2),
    })
}

/// Updating between correlated judgments: the more confident one wins, the
/// first on a tie. The result carries both bases.
pub fn update_choice(j1: &Judgment, j2: &Judgment) -> Result<Judgment> {
    j1.same_statement(j2)?;
    if !j1.shares_source(j2) {
        return Err(Error::DisjointSources);
    }
    let winner = if j2.tv.c > j1.tv.c { j2 } else { j1 };
    Ok(Judgment {
        base: j1.merged_base(j2),
        ..winner.clone()
    })
}

/// Which rule `combine` applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineRule {
    Revision,
    Update,
}

impl fmt::Display for CombineRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CombineRule::Revision => "revision",
            CombineRule::Update => "update",
        })
    }
}

/// Revises judgments from disjoint sources and chooses between judgments
/// sharing a source.
pub fn combine(j1: &Judgment, j2: &Judgment) -> Result<(Judgment, CombineRule)> {
    j1.same_statement(j2)?;
    if j1.shares_source(j2) {
        Ok((update_choice(j1, j2)?, CombineRule::Update))
    } else {
        Ok((revise(j1, j2)?, CombineRule::Revision))
    }
}

/// The calculus under a fixed evidential horizon.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Calculus {
    k: Horizon,
}

impl Calculus {
    pub fn new(k: Horizon) -> Self {
        Calculus { k }
    }

    pub fn horizon(&self) -> Horizon {
        self.k
    }

    pub fn counts(&self, positive: u64, total: u64) -> Result<TruthValue> {
        truth_from_counts(EvidenceCount::new(positive, total, self.k)?)
    }

    /// From `M ⊂ P ⟨f₁, c₁⟩` and `M ⊂ S ⟨f₂, c₂⟩`, concludes `S ⊂ P` with
    /// `f = f₁` and `c = f₂c₁c₂ / (f₂c₁c₂ + k)`.
    pub fn induction(&self, j1: &Judgment, j2: &Judgment) -> Result<Judgment> {
        if j1.subject != j2.subject {
            return Err(Error::RuleInapplicable(format!(
                "induction needs a shared subject, got `{}` and `{}`",
                j1.subject, j2.subject
            )));
        }
        let support = j2.tv.f * j1.tv.c * j2.tv.c;
        let tv = TruthValue::new(j1.tv.f, support / (support + self.k.value()))?;
        Ok(Judgment {
            subject: j2.predicate.clone(),
            predicate: j1.predicate.clone(),
            tv,
            base: j1.merged_base(j2),
        })
    }
}
