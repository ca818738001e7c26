use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),
    #[error("space has {atoms} atoms; at most {max} are supported")]
    SpaceTooLarge { atoms: usize, max: usize },
    #[error("malformed sentence: unknown atom `{0}`")]
    MalformedSentence(String),
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("invalid prior: {0}")]
    InvalidPrior(String),
    #[error("conditioning sentence `{0}` has zero probability")]
    ZeroCondition(String),
    #[error("conditional on `{0}` is undefined for the requested target")]
    UndefinedConditional(String),
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("likelihood ratio {0} must be finite and non-negative")]
    InvalidLikelihoodRatio(f64),

    #[error("invalid truth value <{f}, {c}>: frequency must lie in [0, 1] and confidence in [0, 1)")]
    InvalidTruthValue { f: f64, c: f64 },
    #[error("confidence {0} is absolute; weight is unbounded")]
    AbsoluteConfidence(f64),
    #[error("invalid evidence count: {0}")]
    InvalidEvidenceCount(String),
    #[error("frequency is undefined without checked cases")]
    UndefinedFrequency,
    #[error("evidential horizon must be at least 1")]
    InvalidHorizon,
    #[error("invalid term `{0}`")]
    InvalidTerm(String),
    #[error("judgment needs a non-empty evidential base")]
    EmptyBase,
    #[error("rule inapplicable: {0}")]
    RuleInapplicable(String),
    #[error("premises share evidential sources; choose by confidence instead of revising")]
    CorrelativeSources,
    #[error("premises have disjoint evidential bases; revise instead")]
    DisjointSources,
    #[error("neither premise carries any evidence")]
    NoEvidence,
    #[error("judgments are about different statements: `{0}` vs `{1}`")]
    NotCombinable(String, String),

    #[error("line {line}: {message}")]
    Scenario { line: usize, message: String },
    #[error("scenario cannot be compared: {0}")]
    UnusableScenario(String),
}
