//! Exact belief-change engines over small proposition spaces.
//!
//! * [`proposition`]: Boolean sentences and their possible-world semantics.
//! * [`bayes`]: priors, conditional probability, belief by conditioning on
//!   accumulated evidence, admissibility checks and the capacity search.
//! * [`jeffrey`]: soft evidence by Jeffrey's rule and by virtual evidence.
//! * [`nars`]: frequency/confidence truth values with induction, revision and
//!   source-aware choice.
//! * [`scenario`]: the text format driving all of the above, its runner and
//!   the engine comparison.

pub mod bayes;
pub mod error;
pub mod jeffrey;
pub mod nars;
pub mod proposition;
pub mod scenario;

pub use bayes::{
    check_preconditions, max_conditioning_chain, BeliefState, ChainBound, Check, Distribution, PreconditionReport,
};
pub use error::{Error, Result};
pub use jeffrey::{dominance_probe, jeffrey_update, likelihood_update, virtual_update, DominanceReport, SoftEvidence};
pub use nars::{
    combine, revise, truth_from_counts, update_choice, Calculus, EvidenceCount, Horizon, Judgment, Term, TruthValue,
};
pub use proposition::{parse_sentence, Atom, ModelSet, Sentence, Space, World};
pub use scenario::{compare_engines, parse_scenario, run_scenario, RunOptions, Scenario, Trace};
