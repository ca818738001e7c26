//! Proposition spaces: Boolean sentences over a finite, ordered atom set,
//! interpreted over the enumerated possible worlds of that set.
//!
//! Worlds are numbered by binary counting over the atom list with the first
//! atom as the most significant bit, so world `0` makes every atom false and
//! world `2^n - 1` makes every atom true. Every ordering that reaches a trace
//! or a golden file goes through this numbering.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest number of atoms a space may hold (65,536 worlds).
pub const MAX_ATOMS: usize = 16;

const RESERVED: [&str; 2] = ["true", "false"];

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_identifier(&name) && !RESERVED.contains(&name.as_str()) {
            Ok(Atom(name))
        } else {
            Err(Error::InvalidAtom(name))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A Boolean formula over named atoms.
///
/// Sentences are independent of any particular space; an atom name is only
/// resolved when the sentence is evaluated against one. A sentence naming an
/// atom the space does not declare is malformed over that space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sentence {
    True,
    False,
    Atom(String),
    Not(Box<Sentence>),
    And(Box<Sentence>, Box<Sentence>),
    Or(Box<Sentence>, Box<Sentence>),
}

impl Sentence {
    pub fn atom(name: impl Into<String>) -> Self {
        Sentence::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Sentence::Not(Box::new(self))
    }

    pub fn and(self, other: Sentence) -> Self {
        Sentence::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Sentence) -> Self {
        Sentence::Or(Box::new(self), Box::new(other))
    }

    /// Left-nested conjunction of `parts`; `⊤` when empty.
    pub fn conjunction<I: IntoIterator<Item = Sentence>>(parts: I) -> Self {
        parts.into_iter().reduce(Sentence::and).unwrap_or(Sentence::True)
    }

    /// Left-nested disjunction of `parts`; `⊥` when empty.
    pub fn disjunction<I: IntoIterator<Item = Sentence>>(parts: I) -> Self {
        parts.into_iter().reduce(Sentence::or).unwrap_or(Sentence::False)
    }

    /// Names of every atom the sentence mentions.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Sentence::True | Sentence::False => {}
            Sentence::Atom(name) => {
                out.insert(name);
            }
            Sentence::Not(s) => s.collect_atoms(out),
            Sentence::And(a, b) | Sentence::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Sentence::Or(..) => 1,
            Sentence::And(..) => 2,
            Sentence::Not(_) => 3,
            _ => 4,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sentence::True => f.write_str("true"),
            Sentence::False => f.write_str("false"),
            Sentence::Atom(name) => f.write_str(name),
            Sentence::Not(s) => {
                f.write_str("!")?;
                s.fmt_operand(f, 3)
            }
            // Left-associative: the right operand needs strictly higher binding.
            Sentence::And(a, b) => {
                a.fmt_operand(f, 2)?;
                f.write_str(" & ")?;
                b.fmt_operand(f, 3)
            }
            Sentence::Or(a, b) => {
                a.fmt_operand(f, 1)?;
                f.write_str(" | ")?;
                b.fmt_operand(f, 2)
            }
        }
    }
}

impl FromStr for Sentence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sentence(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' => out.push((column, Token::Not)),
            '&' => out.push((column, Token::And)),
            '|' => out.push((column, Token::Or)),
            '(' => out.push((column, Token::LParen)),
            ')' => out.push((column, Token::RParen)),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((column, Token::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_column)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            column: self.column(),
            message: message.into(),
        })
    }

    fn disjunction(&mut self) -> Result<Sentence> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Sentence> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Sentence> {
        match self.peek().cloned() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(self.unary()?.not())
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.disjunction()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(match name.as_str() {
                    "true" => Sentence::True,
                    "false" => Sentence::False,
                    _ => Sentence::Atom(name),
                })
            }
            Some(_) => self.error("expected an atom, `!`, `(`, `true` or `false`"),
            None => self.error("unexpected end of sentence"),
        }
    }
}

/// Parses the concrete syntax: identifiers, `!`, `&`, `|`, parentheses,
/// `true` and `false`. `!` binds tighter than `&`, which binds tighter
/// than `|`; binary operators associate to the left.
pub fn parse_sentence(src: &str) -> Result<Sentence> {
    let mut parser = Parser {
        tokens: tokenize(src)?,
        pos: 0,
        end_column: src.chars().count() + 1,
    };
    let sentence = parser.disjunction()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("unexpected trailing input");
    }
    Ok(sentence)
}

/// A total truth assignment, identified by its position in the canonical
/// enumeration of its space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct World {
    index: u32,
    width: u8,
}

impl World {
    pub fn index(&self) -> usize {
        self.index as usize
    }

    /// Number of atoms this world assigns.
    pub fn width(&self) -> usize {
        self.width as usize
    }

    /// Truth value of the atom at position `atom` in the space's atom list.
    pub fn value(&self, atom: usize) -> bool {
        assert!(atom < self.width(), "atom position out of range");
        (self.index >> (self.width as usize - 1 - atom)) & 1 == 1
    }
}

/// A set of worlds of one space, stored as a bitmask over world indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModelSet {
    blocks: Vec<u64>,
    len: usize,
}

impl ModelSet {
    pub fn empty(len: usize) -> Self {
        ModelSet {
            blocks: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        ModelSet::empty(len).complement()
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut set = ModelSet::empty(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Number of worlds in the underlying space.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.len, "world index out of range");
        self.blocks[index / 64] |= 1 << (index % 64);
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.len && self.blocks[index / 64] & (1 << (index % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    pub fn complement(&self) -> Self {
        let mut blocks: Vec<u64> = self.blocks.iter().map(|b| !b).collect();
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = blocks.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        ModelSet { blocks, len: self.len }
    }

    pub fn intersection(&self, other: &ModelSet) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &ModelSet) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.intersection(other) == *self
    }

    fn zip_with(&self, other: &ModelSet, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.len, other.len, "model sets from different spaces");
        ModelSet {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(&a, &b)| op(a, b)).collect(),
            len: self.len,
        }
    }
}

/// The proposition space generated by an ordered list of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Space {
    atoms: Vec<Atom>,
}

impl Space {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut atoms: Vec<Atom> = Vec::new();
        for name in names {
            let atom = Atom::new(name)?;
            if atoms.contains(&atom) {
                return Err(Error::DuplicateAtom(atom.0));
            }
            atoms.push(atom);
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::SpaceTooLarge {
                atoms: atoms.len(),
                max: MAX_ATOMS,
            });
        }
        Ok(Space { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a.name() == name)
    }

    pub fn world_count(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn world(&self, index: usize) -> World {
        assert!(index < self.world_count(), "world index out of range");
        World {
            index: index as u32,
            width: self.atoms.len() as u8,
        }
    }

    pub fn worlds(&self) -> impl Iterator<Item = World> + '_ {
        (0..self.world_count()).map(|i| self.world(i))
    }

    /// World with the given atoms true and every other atom false.
    pub fn world_where<'a, I>(&self, true_atoms: I) -> Result<World>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let n = self.atoms.len();
        let mut index = 0usize;
        for name in true_atoms {
            let pos = self
                .atom_index(name)
                .ok_or_else(|| Error::MalformedSentence(name.to_string()))?;
            index |= 1 << (n - 1 - pos);
        }
        Ok(self.world(index))
    }

    /// Whether every atom of `s` is declared in this space.
    pub fn contains(&self, s: &Sentence) -> bool {
        self.check(s).is_ok()
    }

    pub fn check(&self, s: &Sentence) -> Result<()> {
        match s.atoms().into_iter().find(|a| self.atom_index(a).is_none()) {
            Some(unknown) => Err(Error::MalformedSentence(unknown.to_string())),
            None => Ok(()),
        }
    }

    pub fn evaluate(&self, s: &Sentence, w: World) -> Result<bool> {
        assert_eq!(w.width(), self.atoms.len(), "world from a different space");
        Ok(match s {
            Sentence::True => true,
            Sentence::False => false,
            Sentence::Atom(name) => {
                let pos = self
                    .atom_index(name)
                    .ok_or_else(|| Error::MalformedSentence(name.clone()))?;
                w.value(pos)
            }
            Sentence::Not(inner) => !self.evaluate(inner, w)?,
            Sentence::And(a, b) => {
                // Both sides are checked so malformedness never hides behind
                // short-circuiting.
                let (a, b) = (self.evaluate(a, w)?, self.evaluate(b, w)?);
                a && b
            }
            Sentence::Or(a, b) => {
                let (a, b) = (self.evaluate(a, w)?, self.evaluate(b, w)?);
                a || b
            }
        })
    }

    /// The set of worlds in which `s` holds.
    pub fn models(&self, s: &Sentence) -> Result<ModelSet> {
        let len = self.world_count();
        Ok(match s {
            Sentence::True => ModelSet::full(len),
            Sentence::False => ModelSet::empty(len),
            Sentence::Atom(name) => {
                let pos = self
                    .atom_index(name)
                    .ok_or_else(|| Error::MalformedSentence(name.clone()))?;
                let shift = self.atoms.len() - 1 - pos;
                ModelSet::from_indices(len, (0..len).filter(|i| (i >> shift) & 1 == 1))
            }
            Sentence::Not(inner) => self.models(inner)?.complement(),
            Sentence::And(a, b) => self.models(a)?.intersection(&self.models(b)?),
            Sentence::Or(a, b) => self.models(a)?.union(&self.models(b)?),
        })
    }

    pub fn equivalent(&self, a: &Sentence, b: &Sentence) -> Result<bool> {
        Ok(self.models(a)? == self.models(b)?)
    }

    /// Conjunction of literals that holds in exactly world `w`.
    pub fn minterm(&self, w: World) -> Sentence {
        Sentence::conjunction(self.atoms.iter().enumerate().map(|(i, a)| {
            let lit = Sentence::atom(a.name());
            if w.value(i) {
                lit
            } else {
                lit.not()
            }
        }))
    }

    /// A sentence whose models are exactly `set`: the representative of the
    /// equivalence class of sentences with that model set.
    pub fn sentence_for(&self, set: &ModelSet) -> Sentence {
        assert_eq!(set.universe(), self.world_count(), "model set from a different space");
        Sentence::disjunction(set.iter().map(|i| self.minterm(self.world(i))))
    }

    /// Renders a world as a conjunction of literals, e.g. `p & !q`.
    pub fn describe(&self, w: World) -> String {
        self.minterm(w).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(src: &str) -> Sentence {
        src.parse().unwrap()
    }

    fn pq() -> Space {
        Space::new(["p", "q"]).unwrap()
    }

    #[test]
    fn evaluate_basics() {
        let sp = pq();
        for w in sp.worlds() {
            assert!(!sp.evaluate(&s("p & !p"), w).unwrap());
            assert!(sp.evaluate(&s("p | !p"), w).unwrap());
        }
        let w = sp.world_where(["p"]).unwrap();
        assert!(!sp.evaluate(&s("p & q"), w).unwrap());
        assert!(sp.evaluate(&Sentence::True, w).unwrap());
        assert!(!sp.evaluate(&Sentence::False, w).unwrap());
    }

    #[test]
    fn evaluate_rejects_unknown_atoms() {
        let sp = pq();
        let w = sp.world(0);
        assert_eq!(
            sp.evaluate(&s("false & tweety"), w),
            Err(Error::MalformedSentence("tweety".into()))
        );
        assert!(sp.models(&s("p | tweety")).is_err());
    }

    #[test]
    fn canonical_world_order() {
        let sp = pq();
        let names: Vec<String> = sp.worlds().map(|w| sp.describe(w)).collect();
        assert_eq!(names, ["!p & !q", "!p & q", "p & !q", "p & q"]);
    }

    #[test]
    fn models_counts() {
        let sp = pq();
        assert_eq!(sp.models(&Sentence::True).unwrap().count(), 4);
        let p = sp.models(&s("p")).unwrap();
        assert_eq!(p.iter().collect::<Vec<_>>(), [2, 3]);
        assert_eq!(sp.models(&s("p & q")).unwrap().count(), 1);
    }

    #[test]
    fn equivalence_examples() {
        let sp = pq();
        assert!(sp.equivalent(&s("!!p"), &s("p")).unwrap());
        assert!(sp.equivalent(&s("p & q"), &s("q & p")).unwrap());
        assert!(!sp.equivalent(&s("p"), &s("q")).unwrap());
    }

    #[test]
    fn parser_precedence_and_associativity() {
        assert_eq!(s("a | b & !c"), s("a | (b & (!c))"));
        assert_eq!(s("a & b & c"), s("(a & b) & c"));
        assert_ne!(s("a & b & c"), s("a & (b & c)"));
        assert_eq!(s("a & (b & c)").to_string(), "a & (b & c)");
        assert_eq!(s("!(a | b)").to_string(), "!(a | b)");
    }

    #[test]
    fn parser_errors_carry_columns() {
        match parse_sentence("p & ") {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        match parse_sentence("p # q") {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_sentence("(p").is_err());
        assert!(parse_sentence("p q").is_err());
        assert!(parse_sentence("").is_err());
    }

    #[test]
    fn space_construction_limits() {
        assert!(matches!(Space::new(["p", "p"]), Err(Error::DuplicateAtom(_))));
        assert!(matches!(Space::new(["1p"]), Err(Error::InvalidAtom(_))));
        assert!(matches!(Space::new(["true"]), Err(Error::InvalidAtom(_))));
        let names: Vec<String> = (0..17).map(|i| format!("a{i}")).collect();
        assert!(matches!(Space::new(names.clone()), Err(Error::SpaceTooLarge { .. })));
        let sp = Space::new(names[..16].to_vec()).unwrap();
        assert_eq!(sp.world_count(), 65_536);
        assert_eq!(sp.models(&s("a0 & a15")).unwrap().count(), 16_384);
    }

    #[test]
    fn sentence_for_round_trips_model_sets() {
        let sp = pq();
        for mask in 0u32..16 {
            let set = ModelSet::from_indices(4, (0..4).filter(|i| mask >> i & 1 == 1));
            assert_eq!(sp.models(&sp.sentence_for(&set)).unwrap(), set);
        }
    }

    pub(crate) fn arb_sentence(atoms: &'static [&'static str]) -> impl Strategy<Value = Sentence> {
        let leaf = prop_oneof![
            1 => Just(Sentence::True),
            1 => Just(Sentence::False),
            6 => proptest::sample::select(atoms).prop_map(Sentence::atom),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Sentence::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
                (inner.clone(), inner).prop_map(|(a, b)| a.or(b)),
            ]
        })
    }

    const ATOMS: &[&str] = &["p", "q", "r"];

    proptest! {
        #[test]
        fn negation_is_complement(a in arb_sentence(ATOMS)) {
            let sp = Space::new(ATOMS.iter().copied()).unwrap();
            prop_assert_eq!(sp.models(&a.clone().not()).unwrap(), sp.models(&a).unwrap().complement());
        }

        #[test]
        fn connectives_are_set_operations(a in arb_sentence(ATOMS), b in arb_sentence(ATOMS)) {
            let sp = Space::new(ATOMS.iter().copied()).unwrap();
            let (ma, mb) = (sp.models(&a).unwrap(), sp.models(&b).unwrap());
            prop_assert_eq!(sp.models(&a.clone().and(b.clone())).unwrap(), ma.intersection(&mb));
            prop_assert_eq!(sp.models(&a.or(b)).unwrap(), ma.union(&mb));
        }

        #[test]
        fn models_agree_with_evaluate(a in arb_sentence(ATOMS)) {
            let sp = Space::new(ATOMS.iter().copied()).unwrap();
            let m = sp.models(&a).unwrap();
            for w in sp.worlds() {
                prop_assert_eq!(m.contains(w.index()), sp.evaluate(&a, w).unwrap());
            }
        }

        #[test]
        fn equivalence_is_an_equivalence(
            a in arb_sentence(ATOMS), b in arb_sentence(ATOMS), c in arb_sentence(ATOMS)
        ) {
            let sp = Space::new(ATOMS.iter().copied()).unwrap();
            let eq = |x: &Sentence, y: &Sentence| sp.equivalent(x, y).unwrap();
            prop_assert!(eq(&a, &a));
            prop_assert_eq!(eq(&a, &b), eq(&b, &a));
            if eq(&a, &b) && eq(&b, &c) {
                prop_assert!(eq(&a, &c));
            }
        }

        #[test]
        fn display_reparses_to_same_tree(a in arb_sentence(ATOMS)) {
            prop_assert_eq!(parse_sentence(&a.to_string()).unwrap(), a);
        }
    }
}
