//! Side-by-side view of how soft evidence and revision treat a conflict.
//!
//! For every soft-evidence step the report shows that the posterior equals
//! the incoming target whatever the prior held. For every revision it shows
//! the pooled frequency landing between the two premises with a higher
//! confidence, next to the Jeffrey analog that would simply adopt the
//! incoming frequency.

use std::fmt;
use std::sync::Arc;

use super::run::{bayesian_trace, run_observed, RunOptions};
use super::Scenario;
use crate::bayes::Distribution;
use crate::error::{Error, Result};
use crate::jeffrey::{jeffrey_update, SoftEvidence};
use crate::nars::{fixed6, TruthValue};
use crate::proposition::{Sentence, Space};

#[derive(Debug, Clone, PartialEq)]
pub struct SoftRow {
    pub line: usize,
    pub sentence: String,
    pub prior: f64,
    pub target: f64,
    pub posterior: f64,
    pub dominated: bool,
    pub unchanged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConflictRow {
    pub line: usize,
    pub statement: String,
    pub held: TruthValue,
    pub incoming: TruthValue,
    pub revised: TruthValue,
    /// Final opinion when the held frequency is a prior probability and the
    /// incoming frequency is applied with Jeffrey's rule; `None` when the
    /// held frequency is 0 or 1 and the rule is undefined.
    pub jeffrey_analog: Option<f64>,
    /// Revised frequency lies strictly between the premises, or equals
    /// both when they agree.
    pub between: bool,
    pub confidence_risen: bool,
    pub unchanged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub soft: Vec<SoftRow>,
    pub conflicts: Vec<ConflictRow>,
}

impl Comparison {
    /// Every soft step was dominated by its target and every revision
    /// adjusted rather than replaced the held opinion.
    pub fn holds(&self) -> bool {
        self.soft.iter().all(|r| r.dominated) && self.conflicts.iter().all(|r| r.between && r.confidence_risen)
    }
}

fn jeffrey_analog(held: f64, incoming: f64) -> Option<f64> {
    let space = Arc::new(Space::new(["a"]).ok()?);
    let prior = Distribution::from_vec(space, vec![1.0 - held, held]).ok()?;
    let a = Sentence::atom("a");
    let updated = jeffrey_update(&prior, &SoftEvidence::new(a.clone(), incoming).ok()?).ok()?;
    updated.prob(&a).ok()
}

/// Runs `sc` and lays its soft-evidence and revision steps side by side.
pub fn compare_engines(sc: &Scenario, options: RunOptions) -> Result<Comparison> {
    let (trace, observed) = run_observed(sc, options);
    if let Some(event) = trace.events.last().filter(|_| trace.failed()) {
        if let super::Outcome::Error(msg) = &event.outcome {
            return Err(Error::Scenario {
                line: event.line,
                message: msg.clone(),
            });
        }
    }
    let tol = options.tolerance;
    let soft: Vec<SoftRow> = observed
        .soft
        .into_iter()
        .map(|s| SoftRow {
            dominated: (s.posterior - s.target).abs() <= tol,
            unchanged: (s.posterior - s.prior).abs() <= tol,
            line: s.line,
            sentence: s.sentence,
            prior: s.prior,
            target: s.target,
            posterior: s.posterior,
        })
        .collect();
    let conflicts: Vec<ConflictRow> = observed
        .revisions
        .into_iter()
        .map(|r| {
            let (f1, f2, f) = (r.held.frequency(), r.incoming.frequency(), r.revised.frequency());
            let between = if (f1 - f2).abs() <= tol {
                (f - f1).abs() <= tol
            } else {
                f1.min(f2) < f && f < f1.max(f2)
            };
            ConflictRow {
                line: r.line,
                statement: r.statement,
                jeffrey_analog: jeffrey_analog(f1, f2),
                between,
                confidence_risen: r.revised.confidence() > r.held.confidence().max(r.incoming.confidence()),
                unchanged: (f - f1).abs() <= tol,
                held: r.held,
                incoming: r.incoming,
                revised: r.revised,
            }
        })
        .collect();
    if soft.is_empty() && conflicts.is_empty() {
        return Err(Error::UnusableScenario(
            "no soft evidence (`jeffrey`, `virtual`, `likelihood`) and no revision (`nars combine` of disjoint sources)".into(),
        ));
    }
    Ok(Comparison { soft, conflicts })
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.soft.is_empty() {
            writeln!(f, "soft evidence (updating):")?;
            for r in &self.soft {
                writeln!(
                    f,
                    "  line {}: P({}) {} -> {} with target {}: {}",
                    r.line,
                    r.sentence,
                    fixed6(r.prior),
                    fixed6(r.posterior),
                    fixed6(r.target),
                    if r.unchanged {
                        "no change"
                    } else if r.dominated {
                        "prior opinion discarded"
                    } else {
                        "target missed"
                    }
                )?;
            }
        }
        if !self.conflicts.is_empty() {
            writeln!(f, "conflicting judgments (revision vs. Jeffrey analog):")?;
            for r in &self.conflicts {
                writeln!(f, "  line {}: {}", r.line, r.statement)?;
                writeln!(f, "    held     {}", r.held)?;
                writeln!(f, "    incoming {}", r.incoming)?;
                match r.jeffrey_analog {
                    Some(p) => writeln!(f, "    jeffrey  {} (incoming frequency adopted)", fixed6(p))?,
                    None => writeln!(f, "    jeffrey  undefined (held frequency is 0 or 1)")?,
                }
                let verdict = if r.unchanged {
                    "no change"
                } else if r.between {
                    "adjusted between premises"
                } else {
                    "NOT between premises"
                };
                writeln!(
                    f,
                    "    revised  {} ({verdict}; confidence {})",
                    r.revised,
                    if r.confidence_risen { "risen" } else { "NOT risen" }
                )?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BackstoryReport {
    pub left: String,
    pub right: String,
}

impl BackstoryReport {
    pub fn identical(&self) -> bool {
        self.left == self.right
    }
}

impl fmt::Display for BackstoryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.identical() {
            writeln!(f, "bayesian traces: identical ({} bytes)", self.left.len())
        } else {
            writeln!(f, "bayesian traces: differ")?;
            for (i, (l, r)) in self.left.lines().zip(self.right.lines()).enumerate() {
                if l != r {
                    writeln!(f, "  first difference at line {}:\n    < {l}\n    > {r}", i + 1)?;
                    break;
                }
            }
            Ok(())
        }
    }
}

/// Compares the Bayesian traces of two scenarios. Whatever reasons were
/// given for their priors, equal priors and equal evidence give equal traces.
pub fn compare_backstories(a: &Scenario, b: &Scenario, options: RunOptions) -> BackstoryReport {
    BackstoryReport {
        left: bayesian_trace(a, options),
        right: bayesian_trace(b, options),
    }
}
