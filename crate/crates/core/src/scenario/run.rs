use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{Directive, Scenario};
use crate::bayes::{check_preconditions, conditioning_sentence, BeliefState, Distribution, PreconditionReport};
use crate::error::{Error, Result};
use crate::jeffrey::{jeffrey_update, likelihood_target, virtual_update, SoftEvidence};
use crate::nars::{combine, fixed6, Calculus, CombineRule, Horizon, Judgment, Term, TruthValue};
use crate::proposition::{Space, World};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub horizon: Horizon,
    pub tolerance: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            horizon: Horizon::default(),
            tolerance: crate::bayes::TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Done,
    /// Evidence turned away by the precondition check; execution continues.
    Refused,
    /// Execution stops here.
    Error(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceEvent {
    pub step: usize,
    pub line: usize,
    pub directive: Directive,
    pub report: Option<PreconditionReport>,
    pub outputs: Vec<String>,
    pub outcome: Outcome,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}] {}", self.step, self.directive)?;
        if let Some(report) = &self.report {
            writeln!(f, "    preconditions: {report}")?;
        }
        for out in &self.outputs {
            writeln!(f, "    {out}")?;
        }
        match &self.outcome {
            Outcome::Done => Ok(()),
            Outcome::Refused => writeln!(f, "    refused: evidence not conditioned"),
            Outcome::Error(msg) => writeln!(f, "    error (line {}): {msg}", self.line),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
    /// Every judgment known when execution stopped, by id.
    pub judgments: BTreeMap<String, Judgment>,
}

impl Trace {
    pub fn failed(&self) -> bool {
        self.events
            .last()
            .is_some_and(|e| matches!(e.outcome, Outcome::Error(_)))
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.events.iter().try_for_each(|e| write!(f, "{e}"))
    }
}

/// A soft-evidence step, recorded for the engine comparison.
#[derive(Debug, Clone, PartialEq)]
pub(super) struct SoftStep {
    pub line: usize,
    pub sentence: String,
    pub prior: f64,
    pub target: f64,
    pub posterior: f64,
}

/// A revision step, recorded for the engine comparison.
#[derive(Debug, Clone, PartialEq)]
pub(super) struct RevisionStep {
    pub line: usize,
    pub statement: String,
    pub held: TruthValue,
    pub incoming: TruthValue,
    pub revised: TruthValue,
}

#[derive(Debug, Default)]
pub(super) struct Observations {
    pub soft: Vec<SoftStep>,
    pub revisions: Vec<RevisionStep>,
    /// Normalized prior weights, once the prior has been built.
    pub prior: Option<Distribution>,
    /// Rendered evidence and query events, without prior set-up lines.
    pub bayesian: Vec<String>,
}

enum PriorSpec {
    Unset,
    Uniform,
    Worlds(Vec<(World, f64)>),
}

struct Runner {
    options: RunOptions,
    nars: Calculus,
    space: Option<Arc<Space>>,
    prior: PriorSpec,
    belief: Option<BeliefState>,
    judgments: BTreeMap<String, Judgment>,
    observed: Observations,
}

enum Step {
    Done(Vec<String>),
    Checked(PreconditionReport, Vec<String>, bool),
}

impl Runner {
    fn new(options: RunOptions) -> Self {
        Runner {
            options,
            nars: Calculus::new(options.horizon),
            space: None,
            prior: PriorSpec::Unset,
            belief: None,
            judgments: BTreeMap::new(),
            observed: Observations::default(),
        }
    }

    fn space(&self) -> Result<&Arc<Space>> {
        self.space
            .as_ref()
            .ok_or_else(|| Error::UnusableScenario("no atoms declared".into()))
    }

    /// Current beliefs, building the prior on first use.
    fn belief(&mut self) -> Result<&BeliefState> {
        if self.belief.is_none() {
            let space = Arc::clone(self.space()?);
            let prior = match &self.prior {
                PriorSpec::Unset => return Err(Error::InvalidPrior("no prior specified".into())),
                PriorSpec::Uniform => Distribution::uniform(space),
                PriorSpec::Worlds(raw) => Distribution::from_weights(space, raw.iter().copied())?,
            };
            self.observed.prior = Some(prior.clone());
            self.belief = Some(BeliefState::new(prior));
        }
        Ok(self.belief.as_ref().expect("just built"))
    }

    fn judgment(&self, id: &str) -> Result<&Judgment> {
        self.judgments
            .get(id)
            .ok_or_else(|| Error::RuleInapplicable(format!("unknown judgment `{id}`")))
    }

    fn soft(&mut self, line: usize, ev: SoftEvidence, use_virtual: bool, extra: Vec<String>) -> Result<Step> {
        let current = self.belief()?.posterior();
        let prior = current.prob(ev.sentence())?;
        let updated = if use_virtual {
            virtual_update(&current, &ev)?
        } else {
            jeffrey_update(&current, &ev)?
        };
        let posterior = updated.prob(ev.sentence())?;
        let dominated = (posterior - ev.target()).abs() <= self.options.tolerance;
        self.belief = Some(BeliefState::new(updated));
        self.observed.soft.push(SoftStep {
            line,
            sentence: ev.sentence().to_string(),
            prior,
            target: ev.target(),
            posterior,
        });
        let mut out = extra;
        out.push(format!(
            "P({}): {} -> {} (target {}, {})",
            ev.sentence(),
            fixed6(prior),
            fixed6(posterior),
            fixed6(ev.target()),
            if dominated {
                "prior opinion overridden"
            } else {
                "target missed"
            }
        ));
        Ok(Step::Done(out))
    }

    fn execute(&mut self, line: usize, d: &Directive) -> Result<Step> {
        match d {
            Directive::Atoms(names) => {
                let space = Space::new(names.iter().cloned())?;
                let n = space.atoms().len();
                let out = format!(
                    "space: {n} atom{}, {} worlds",
                    if n == 1 { "" } else { "s" },
                    space.world_count()
                );
                self.space = Some(Arc::new(space));
                Ok(Step::Done(vec![out]))
            }
            Directive::PriorUniform => {
                self.prior = PriorSpec::Uniform;
                Ok(Step::Done(vec![format!(
                    "prior: uniform over {} worlds",
                    self.space()?.world_count()
                )]))
            }
            Directive::PriorWorld { assignment, weight } => {
                let space = Arc::clone(self.space()?);
                let world = space.world_where(assignment.iter().filter(|(_, v)| *v).map(|(a, _)| a.as_str()))?;
                let out = format!("raw weight [{}] = {}", space.describe(world), fixed6(*weight));
                match &mut self.prior {
                    PriorSpec::Worlds(list) => list.push((world, *weight)),
                    other => *other = PriorSpec::Worlds(vec![(world, *weight)]),
                }
                Ok(Step::Done(vec![out]))
            }
            Directive::Condition { sentence, m } => {
                let m = m.unwrap_or(1.0);
                let state = self.belief()?.clone();
                let report = check_preconditions(&state, sentence, m);
                if !report.admissible() {
                    return Ok(Step::Checked(report, Vec::new(), false));
                }
                let next = state.conditionalize(&conditioning_sentence(sentence, m))?;
                let out = format!("accepted: t = {}, K = {}", next.time(), next.evidence());
                self.belief = Some(next);
                Ok(Step::Checked(report, vec![out], true))
            }
            Directive::Jeffrey { sentence, m } => {
                self.soft(line, SoftEvidence::new(sentence.clone(), *m)?, false, vec![])
            }
            Directive::Virtual { sentence, m } => {
                self.soft(line, SoftEvidence::new(sentence.clone(), *m)?, true, vec![])
            }
            Directive::Likelihood { sentence, ratio } => {
                let current = self.belief()?.posterior();
                let m = likelihood_target(&current, sentence, *ratio)?;
                let note = format!("likelihood ratio {} -> target {}", fixed6(*ratio), fixed6(m));
                self.soft(line, SoftEvidence::new(sentence.clone(), m)?, true, vec![note])
            }
            Directive::Query(sentence) => {
                let state = self.belief()?;
                let value = state.bel(sentence)?;
                Ok(Step::Done(vec![format!(
                    "BEL_{}({}) = {}",
                    state.time(),
                    sentence,
                    fixed6(value)
                )]))
            }
            Directive::Judgment {
                id,
                subject,
                predicate,
                f,
                c,
                base,
            } => {
                let j = Judgment::new(
                    Term::new(subject)?,
                    Term::new(predicate)?,
                    TruthValue::new(*f, *c)?,
                    base.iter().cloned(),
                )?;
                let out = format!("{id}: {j}");
                self.judgments.insert(id.clone(), j);
                Ok(Step::Done(vec![out]))
            }
            Directive::Induct {
                first,
                second,
                conclusion,
            } => {
                let j = self.nars.induction(self.judgment(first)?, self.judgment(second)?)?;
                let out = format!("{conclusion} = induction({first}, {second}): {j}");
                self.judgments.insert(conclusion.clone(), j);
                Ok(Step::Done(vec![out]))
            }
            Directive::Combine {
                first,
                second,
                conclusion,
            } => {
                let (a, b) = (self.judgment(first)?.clone(), self.judgment(second)?.clone());
                let (j, rule) = combine(&a, &b)?;
                if rule == CombineRule::Revision {
                    self.observed.revisions.push(RevisionStep {
                        line,
                        statement: j.statement(),
                        held: a.truth(),
                        incoming: b.truth(),
                        revised: j.truth(),
                    });
                }
                let out = format!("{conclusion} = {rule}({first}, {second}): {j}");
                self.judgments.insert(conclusion.clone(), j);
                Ok(Step::Done(vec![out]))
            }
            Directive::Show(id) => Ok(Step::Done(vec![format!("{id}: {}", self.judgment(id)?)])),
        }
    }
}

pub(super) fn run_observed(sc: &Scenario, options: RunOptions) -> (Trace, Observations) {
    let mut runner = Runner::new(options);
    let mut trace = Trace::default();
    for (i, (line, directive)) in sc.iter().enumerate() {
        let mut event = TraceEvent {
            step: i + 1,
            line,
            directive: directive.clone(),
            report: None,
            outputs: Vec::new(),
            outcome: Outcome::Done,
        };
        match runner.execute(line, directive) {
            Ok(Step::Done(outputs)) => event.outputs = outputs,
            Ok(Step::Checked(report, outputs, accepted)) => {
                event.report = Some(report);
                event.outputs = outputs;
                if !accepted {
                    event.outcome = Outcome::Refused;
                }
            }
            Err(e) => event.outcome = Outcome::Error(e.to_string()),
        }
        if directive.is_probabilistic() {
            let mut rendered = event.to_string();
            // Strip the step number so traces of differently laid-out files align.
            if let Some(pos) = rendered.find("] ") {
                rendered.replace_range(..pos + 2, "");
            }
            runner.observed.bayesian.push(rendered);
        }
        let halt = matches!(event.outcome, Outcome::Error(_));
        trace.events.push(event);
        if halt {
            break;
        }
    }
    trace.judgments = runner.judgments;
    (trace, runner.observed)
}

/// Executes every directive in order. A hard error ends the trace with an
/// error event; refused evidence does not.
pub fn run_scenario(sc: &Scenario, options: RunOptions) -> Trace {
    run_observed(sc, options).0
}

/// The Bayesian part of a run: the normalized prior followed by every
/// evidence and query event. Set-up lines and NARS events are left out, so
/// two scenarios that reach the same prior by different routes compare equal.
pub fn bayesian_trace(sc: &Scenario, options: RunOptions) -> String {
    let (_, observed) = run_observed(sc, options);
    let mut out = String::new();
    if let Some(prior) = &observed.prior {
        out.push_str("prior:");
        for w in prior.weights() {
            out.push(' ');
            out.push_str(&fixed6(*w));
        }
        out.push('\n');
    }
    for event in observed.bayesian {
        out.push_str(&event);
    }
    out
}
