//! Line-oriented scenario files.
//!
//! One directive per line, `#` starts a comment, tokens are separated by
//! whitespace. Sentences take the rest of their line, except that a trailing
//! number is read as the evidence value.
//!
//! ```text
//! atoms <id>...
//! prior uniform
//! prior world <id>=<t|f> ... weight <num>
//! condition <sentence> [<m>]
//! jeffrey <sentence> <m>
//! virtual <sentence> <m>
//! likelihood <sentence> <ratio>
//! query <sentence>
//! nars judgment <id> <subject> <predicate> <f> <c> base <src>...
//! nars induct <id> <id> as <id>
//! nars combine <id> <id> as <id>
//! nars show <id>
//! ```

mod compare;
mod run;

use std::collections::BTreeSet;
use std::fmt;

pub use compare::{compare_backstories, compare_engines, BackstoryReport, Comparison, ConflictRow, SoftRow};
pub use run::{bayesian_trace, run_scenario, Outcome, RunOptions, Trace, TraceEvent};

use crate::error::{Error, Result};
use crate::nars::TruthValue;
use crate::proposition::{is_identifier, parse_sentence, Sentence, Space};

#[derive(Debug, Clone, PartialEq)]
pub enum Directive {
    Atoms(Vec<String>),
    PriorUniform,
    PriorWorld {
        assignment: Vec<(String, bool)>,
        weight: f64,
    },
    /// `m` defaults to 1 when omitted.
    Condition {
        sentence: Sentence,
        m: Option<f64>,
    },
    Jeffrey {
        sentence: Sentence,
        m: f64,
    },
    Virtual {
        sentence: Sentence,
        m: f64,
    },
    Likelihood {
        sentence: Sentence,
        ratio: f64,
    },
    Query(Sentence),
    Judgment {
        id: String,
        subject: String,
        predicate: String,
        f: f64,
        c: f64,
        base: Vec<String>,
    },
    Induct {
        first: String,
        second: String,
        conclusion: String,
    },
    Combine {
        first: String,
        second: String,
        conclusion: String,
    },
    Show(String),
}

impl Directive {
    fn is_probabilistic(&self) -> bool {
        matches!(
            self,
            Directive::Condition { .. }
                | Directive::Jeffrey { .. }
                | Directive::Virtual { .. }
                | Directive::Likelihood { .. }
                | Directive::Query(_)
        )
    }
}

impl fmt::Display for Directive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Directive::Atoms(atoms) => write!(f, "atoms {}", atoms.join(" ")),
            Directive::PriorUniform => f.write_str("prior uniform"),
            Directive::PriorWorld { assignment, weight } => {
                f.write_str("prior world")?;
                for (atom, value) in assignment {
                    write!(f, " {atom}={}", if *value { 't' } else { 'f' })?;
                }
                write!(f, " weight {weight}")
            }
            Directive::Condition { sentence, m: None } => write!(f, "condition {sentence}"),
            Directive::Condition { sentence, m: Some(m) } => write!(f, "condition {sentence} {m}"),
            Directive::Jeffrey { sentence, m } => write!(f, "jeffrey {sentence} {m}"),
            Directive::Virtual { sentence, m } => write!(f, "virtual {sentence} {m}"),
            Directive::Likelihood { sentence, ratio } => write!(f, "likelihood {sentence} {ratio}"),
            Directive::Query(sentence) => write!(f, "query {sentence}"),
            Directive::Judgment {
                id,
                subject,
                predicate,
                f: freq,
                c,
                base,
            } => write!(
                f,
                "nars judgment {id} {subject} {predicate} {freq} {c} base {}",
                base.join(" ")
            ),
            Directive::Induct {
                first,
                second,
                conclusion,
            } => write!(f, "nars induct {first} {second} as {conclusion}"),
            Directive::Combine {
                first,
                second,
                conclusion,
            } => write!(f, "nars combine {first} {second} as {conclusion}"),
            Directive::Show(id) => write!(f, "nars show {id}"),
        }
    }
}

/// A parsed, validated scenario.
///
/// Equality compares directives only; source line numbers are ignored so a
/// rendered and reparsed scenario equals the original.
#[derive(Debug, Clone)]
pub struct Scenario {
    directives: Vec<Directive>,
    lines: Vec<usize>,
}

impl PartialEq for Scenario {
    fn eq(&self, other: &Self) -> bool {
        self.directives == other.directives
    }
}

impl Scenario {
    pub fn directives(&self) -> &[Directive] {
        &self.directives
    }

    /// Source line of each directive.
    pub fn lines(&self) -> &[usize] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.directives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directives.is_empty()
    }

    fn iter(&self) -> impl Iterator<Item = (usize, &Directive)> {
        self.lines.iter().copied().zip(&self.directives)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.directives {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_scenario(s)
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Scenario {
        line,
        message: message.into(),
    })
}

/// Numbers must look like numbers: `inf` and `nan` are identifiers here.
fn parse_number(token: &str) -> Option<f64> {
    let first = token.chars().next()?;
    if !(first.is_ascii_digit() || matches!(first, '.' | '-' | '+')) {
        return None;
    }
    token.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn number(line: usize, token: &str, what: &str) -> Result<f64> {
    parse_number(token).map_or_else(|| err(line, format!("expected {what}, found `{token}`")), Ok)
}

fn probability(line: usize, token: &str) -> Result<f64> {
    let m = number(line, token, "a probability")?;
    if !(0.0..=1.0).contains(&m) {
        return err(line, format!("probability {m} is outside [0, 1]"));
    }
    Ok(m)
}

fn identifier(line: usize, token: &str, what: &str) -> Result<String> {
    if is_identifier(token) {
        Ok(token.to_string())
    } else {
        err(line, format!("invalid {what} `{token}`"))
    }
}

fn sentence(line: usize, tokens: &[&str]) -> Result<Sentence> {
    if tokens.is_empty() {
        return err(line, "missing sentence");
    }
    parse_sentence(&tokens.join(" ")).or_else(|e| err(line, e.to_string()))
}

/// Splits `<sentence> <number>`; the number is mandatory.
fn sentence_and_number<'a>(line: usize, tokens: &[&'a str], what: &str) -> Result<(Sentence, &'a str)> {
    match tokens.split_last() {
        Some((last, rest)) if !rest.is_empty() => Ok((sentence(line, rest)?, *last)),
        _ => err(line, format!("expected a sentence followed by {what}")),
    }
}

#[derive(Default)]
struct Validator {
    space: Option<Space>,
    prior_uniform: bool,
    prior_worlds: BTreeSet<Vec<bool>>,
    evidence_seen: bool,
    judgments: BTreeSet<String>,
}

impl Validator {
    fn space(&self, line: usize) -> Result<&Space> {
        match &self.space {
            Some(sp) => Ok(sp),
            None => err(line, "no atoms declared"),
        }
    }

    fn in_space(&self, line: usize, s: &Sentence) -> Result<()> {
        let sp = self.space(line)?;
        if let Some(unknown) = s.atoms().into_iter().find(|a| sp.atom_index(a).is_none()) {
            return err(line, format!("undeclared atom `{unknown}`"));
        }
        Ok(())
    }

    fn known(&self, line: usize, id: &str) -> Result<()> {
        if self.judgments.contains(id) {
            Ok(())
        } else {
            err(line, format!("unknown judgment `{id}`"))
        }
    }

    fn fresh(&mut self, line: usize, id: &str) -> Result<()> {
        if self.judgments.insert(id.to_string()) {
            Ok(())
        } else {
            err(line, format!("duplicate judgment id `{id}`"))
        }
    }

    fn check(&mut self, line: usize, d: &Directive) -> Result<()> {
        if d.is_probabilistic() {
            self.space(line)?;
            if !self.prior_uniform && self.prior_worlds.is_empty() {
                return err(line, "missing prior");
            }
            self.evidence_seen = true;
        }
        match d {
            Directive::Atoms(names) => {
                if self.space.is_some() {
                    return err(line, "atoms already declared");
                }
                self.space = Some(Space::new(names.iter().cloned()).or_else(|e| err(line, e.to_string()))?);
            }
            Directive::PriorUniform | Directive::PriorWorld { .. } => {
                let sp = self.space(line)?;
                if self.evidence_seen {
                    return err(line, "prior must be specified before any evidence or query");
                }
                match d {
                    Directive::PriorUniform => {
                        if self.prior_uniform || !self.prior_worlds.is_empty() {
                            return err(line, "prior already specified");
                        }
                        self.prior_uniform = true;
                    }
                    Directive::PriorWorld { assignment, .. } => {
                        if self.prior_uniform {
                            return err(line, "prior already specified as uniform");
                        }
                        let mut values = vec![None; sp.atoms().len()];
                        for (atom, value) in assignment {
                            let pos = sp
                                .atom_index(atom)
                                .map_or_else(|| err(line, format!("undeclared atom `{atom}`")), Ok)?;
                            if values[pos].replace(*value).is_some() {
                                return err(line, format!("atom `{atom}` assigned twice"));
                            }
                        }
                        let world: Option<Vec<bool>> = values.into_iter().collect();
                        let world = world.map_or_else(|| err(line, "world must assign every atom"), Ok)?;
                        if !self.prior_worlds.insert(world) {
                            return err(line, "world listed twice");
                        }
                    }
                    _ => unreachable!(),
                }
            }
            // Foreign atoms in `condition` are reported by the precondition
            // check at run time rather than rejected here.
            Directive::Condition { .. } => {}
            Directive::Jeffrey { sentence, .. }
            | Directive::Virtual { sentence, .. }
            | Directive::Likelihood { sentence, .. }
            | Directive::Query(sentence) => self.in_space(line, sentence)?,
            Directive::Judgment { id, f, c, .. } => {
                TruthValue::new(*f, *c).or_else(|e| err(line, e.to_string()))?;
                self.fresh(line, id)?;
            }
            Directive::Induct {
                first,
                second,
                conclusion,
            }
            | Directive::Combine {
                first,
                second,
                conclusion,
            } => {
                self.known(line, first)?;
                self.known(line, second)?;
                self.fresh(line, conclusion)?;
            }
            Directive::Show(id) => self.known(line, id)?,
        }
        Ok(())
    }
}

fn parse_line(line: usize, tokens: &[&str]) -> Result<Directive> {
    let (head, rest) = tokens.split_first().expect("blank lines are skipped");
    match *head {
        "atoms" => {
            if rest.is_empty() {
                return err(line, "`atoms` needs at least one atom");
            }
            rest.iter()
                .map(|t| identifier(line, t, "atom name"))
                .collect::<Result<_>>()
                .map(Directive::Atoms)
        }
        "prior" => match rest {
            ["uniform"] => Ok(Directive::PriorUniform),
            ["world", assigns @ .., "weight", w] => {
                let assignment = assigns
                    .iter()
                    .map(|a| match a.split_once('=') {
                        Some((atom, "t")) => Ok((identifier(line, atom, "atom name")?, true)),
                        Some((atom, "f")) => Ok((identifier(line, atom, "atom name")?, false)),
                        _ => err(line, format!("expected <atom>=<t|f>, found `{a}`")),
                    })
                    .collect::<Result<_>>()?;
                let weight = number(line, w, "a weight")?;
                if weight < 0.0 {
                    return err(line, "weights must be non-negative");
                }
                Ok(Directive::PriorWorld { assignment, weight })
            }
            _ => err(
                line,
                "expected `prior uniform` or `prior world <atom>=<t|f> ... weight <num>`",
            ),
        },
        "condition" => match rest.split_last() {
            Some((last, body)) if !body.is_empty() && parse_number(last).is_some() => Ok(Directive::Condition {
                sentence: sentence(line, body)?,
                m: Some(probability(line, last)?),
            }),
            _ => Ok(Directive::Condition {
                sentence: sentence(line, rest)?,
                m: None,
            }),
        },
        "jeffrey" | "virtual" => {
            let (sentence, m) = sentence_and_number(line, rest, "a probability")?;
            let m = probability(line, m)?;
            Ok(if *head == "jeffrey" {
                Directive::Jeffrey { sentence, m }
            } else {
                Directive::Virtual { sentence, m }
            })
        }
        "likelihood" => {
            let (sentence, ratio) = sentence_and_number(line, rest, "a likelihood ratio")?;
            let ratio = number(line, ratio, "a likelihood ratio")?;
            if ratio < 0.0 {
                return err(line, "likelihood ratios must be non-negative");
            }
            Ok(Directive::Likelihood { sentence, ratio })
        }
        "query" => Ok(Directive::Query(sentence(line, rest)?)),
        "nars" => parse_nars(line, rest),
        other => err(line, format!("unknown directive `{other}`")),
    }
}

fn parse_nars(line: usize, tokens: &[&str]) -> Result<Directive> {
    match tokens {
        ["judgment", id, subject, predicate, f, c, "base", base @ ..] if !base.is_empty() => Ok(Directive::Judgment {
            id: identifier(line, id, "judgment id")?,
            subject: identifier(line, subject, "term")?,
            predicate: identifier(line, predicate, "term")?,
            f: number(line, f, "a frequency")?,
            c: number(line, c, "a confidence")?,
            base: base
                .iter()
                .map(|s| identifier(line, s, "source"))
                .collect::<Result<_>>()?,
        }),
        ["judgment", ..] => err(
            line,
            "expected `nars judgment <id> <subject> <predicate> <f> <c> base <src>...`",
        ),
        [rule @ ("induct" | "combine"), first, second, "as", conclusion] => {
            let first = identifier(line, first, "judgment id")?;
            let second = identifier(line, second, "judgment id")?;
            let conclusion = identifier(line, conclusion, "judgment id")?;
            Ok(if *rule == "induct" {
                Directive::Induct {
                    first,
                    second,
                    conclusion,
                }
            } else {
                Directive::Combine {
                    first,
                    second,
                    conclusion,
                }
            })
        }
        ["induct" | "combine", ..] => err(line, "expected `nars <induct|combine> <id> <id> as <id>`"),
        ["show", id] => Ok(Directive::Show(identifier(line, id, "judgment id")?)),
        _ => err(
            line,
            "expected `nars judgment`, `nars induct`, `nars combine` or `nars show`",
        ),
    }
}

/// Parses and validates scenario text, stopping at the first error.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut directives = Vec::new();
    let mut lines = Vec::new();
    let mut validator = Validator::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split_once('#').map_or(raw, |(before, _)| before);
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let directive = parse_line(line, &tokens)?;
        validator.check(line, &directive)?;
        directives.push(directive);
        lines.push(line);
    }
    Ok(Scenario { directives, lines })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(text: &str) -> usize {
        match parse_scenario(text) {
            Err(Error::Scenario { line, .. }) => line,
            other => panic!("expected a scenario error, got {other:?}"),
        }
    }

    #[test]
    fn minimal() {
        let sc = parse_scenario("atoms p q\nprior uniform\nquery p").unwrap();
        assert_eq!(sc.len(), 3);
        assert_eq!(sc.lines(), &[1, 2, 3]);
    }

    #[test]
    fn errors_report_lines() {
        assert_eq!(line_of("query p"), 1);
        assert_eq!(line_of("atoms p\n\n# c\nquery p"), 4);
        assert_eq!(line_of("atoms p\nprior uniform\nquery q"), 3);
        assert_eq!(line_of("atoms p\nprior uniform\nfrobnicate"), 3);
        assert_eq!(line_of("atoms p p"), 1);
        assert_eq!(line_of("atoms p\nprior uniform\njeffrey p 1.5"), 3);
        assert_eq!(line_of("atoms p\nprior uniform\njeffrey p"), 3);
        assert_eq!(line_of("atoms p\nprior uniform\nquery p\nprior uniform"), 4);
        assert_eq!(line_of("atoms p q\nprior world p=t weight 1"), 2);
        assert_eq!(
            line_of("atoms p\nprior world p=t weight 1\nprior world p=t weight 2"),
            3
        );
        assert_eq!(line_of("atoms p\nprior world p=x weight 1"), 2);
        assert_eq!(
            line_of("nars judgment a s p 0.5 0.5 base x\nnars judgment a s p 0.5 0.5 base y"),
            2
        );
        assert_eq!(line_of("nars judgment a s p 0.5 1 base x"), 1);
        assert_eq!(line_of("nars judgment a s p 0.5 0.5 base"), 1);
        assert_eq!(line_of("nars judgment a s p 0.5 0.5 base x\nnars induct a b as c"), 2);
        assert_eq!(line_of("nars judgment a s p 0.5 0.5 base x\nnars combine a a as a"), 2);
        assert_eq!(line_of("nars show nothing"), 1);
    }

    #[test]
    fn condition_tolerates_foreign_atoms() {
        let sc = parse_scenario("atoms p\nprior uniform\ncondition tweety").unwrap();
        assert_eq!(
            sc.directives()[2],
            Directive::Condition {
                sentence: Sentence::atom("tweety"),
                m: None
            }
        );
    }

    #[test]
    fn trailing_numbers() {
        let sc = parse_scenario("atoms p inf\nprior uniform\ncondition p & inf\ncondition p 0\njeffrey p | inf 0.25")
            .unwrap();
        assert!(matches!(&sc.directives()[2], Directive::Condition { m: None, .. }));
        assert!(matches!(&sc.directives()[3], Directive::Condition { m: Some(m), .. } if *m == 0.0));
        assert!(matches!(&sc.directives()[4], Directive::Jeffrey { m, .. } if *m == 0.25));
    }

    #[test]
    fn render_reparse() {
        let text = "\
# comment
atoms p q
prior world p=t q=f weight 0.1   # trailing
prior world q=t p=t weight 4
condition p | !q 0
jeffrey (p | q) & !p 0.3
virtual q 1
likelihood p 2.5
query !(p & q)
nars judgment J1 dove flyer 0.9 0.9 base a b
nars judgment J2 dove bird 1 0.9 base c
nars induct J1 J2 as J3
nars combine J3 J3 as J4
nars show J4
";
        let sc = parse_scenario(text).unwrap();
        let rendered = sc.to_string();
        let again = parse_scenario(&rendered).unwrap();
        assert_eq!(sc, again);
        assert_eq!(again.to_string(), rendered);
    }
}
