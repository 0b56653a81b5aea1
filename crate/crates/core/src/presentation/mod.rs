//! Polygraphs: 0-cells, generators, rules, pumped rule families and 3-cells.
//!
//! A monoid is the one-object case. Words remember the object at every
//! cut point, so slicing and concatenation never need the generator table.

mod parse;
mod tietze;

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::rewrite::ZigZag;

pub use parse::{parse_polygraph, serialize_polygraph};
pub use tietze::{tietze_apply, TietzeError, TietzeMove};

pub type GenId = usize;
pub type ObjId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("word is not composable at position {0}")]
    NotComposable(usize),
    #[error("rule {0}: source and target are not parallel")]
    NotParallel(String),
    #[error("rule {0}: lhs is an identity")]
    IdentityLhs(String),
    #[error("duplicate {kind} name `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("order: {0}")]
    Order(String),
    #[error("{0}")]
    Invalid(String),
}

/// A 1-cell of the free category: letters plus the object at each of the
/// `len + 1` cut points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<GenId>,
    objects: Vec<ObjId>,
}

impl Word {
    pub fn identity(obj: ObjId) -> Word {
        Word { letters: Vec::new(), objects: vec![obj] }
    }

    /// Word over a one-object polygraph.
    pub fn monoid(letters: &[GenId]) -> Word {
        Word { letters: letters.to_vec(), objects: vec![0; letters.len() + 1] }
    }

    pub fn letters(&self) -> &[GenId] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn source(&self) -> ObjId {
        self.objects[0]
    }

    pub fn target(&self) -> ObjId {
        *self.objects.last().unwrap()
    }

    pub fn object_at(&self, cut: usize) -> ObjId {
        self.objects[cut]
    }

    pub fn is_parallel(&self, other: &Word) -> bool {
        self.source() == other.source() && self.target() == other.target()
    }

    /// Composition `self · other`; panics if the objects do not meet.
    pub fn concat(&self, other: &Word) -> Word {
        assert_eq!(self.target(), other.source(), "composing non-composable words");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        let mut objects = self.objects.clone();
        objects.extend_from_slice(&other.objects[1..]);
        Word { letters, objects }
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word {
            letters: self.letters[start..end].to_vec(),
            objects: self.objects[start..=end].to_vec(),
        }
    }

    pub fn prefix(&self, end: usize) -> Word {
        self.slice(0, end)
    }

    pub fn suffix(&self, start: usize) -> Word {
        self.slice(start, self.len())
    }

    pub fn occurs_at(&self, pattern: &Word, at: usize) -> bool {
        at + pattern.len() <= self.len()
            && self.letters[at..at + pattern.len()] == pattern.letters[..]
            && self.objects[at] == pattern.source()
    }

    /// Every position where `pattern` occurs as a factor.
    pub fn occurrences(&self, pattern: &Word) -> Vec<usize> {
        if pattern.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pattern.len()).filter(|&i| self.occurs_at(pattern, i)).collect()
    }

    pub fn contains_factor(&self, pattern: &Word) -> bool {
        !self.occurrences(pattern).is_empty()
    }

    /// Replace `len` letters at `at` by `replacement`.
    pub fn splice(&self, at: usize, len: usize, replacement: &Word) -> Word {
        self.prefix(at).concat(replacement).concat(&self.suffix(at + len))
    }

    pub fn contains_letter(&self, g: GenId) -> bool {
        self.letters.contains(&g)
    }
}

/// Shortlex on raw generator ids, which keeps map keys in a readable order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.objects.cmp(&other.objects))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Monoid,
    Category,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub source: ObjId,
    pub target: ObjId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub lhs: Word,
    pub rhs: Word,
}

/// `prefix · gⁿ · suffix ⇒ prefix' · g^(p·n+q) · suffix'` for every `n ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpedRule {
    pub stem: String,
    pub lhs_prefix: Word,
    pub lhs_suffix: Word,
    pub rhs_prefix: Word,
    pub rhs_suffix: Word,
    pub pump: GenId,
    /// Coefficient of `n` in the rhs exponent; 0 or 1.
    pub p: u32,
    pub q: u32,
}

impl PumpedRule {
    fn power(&self, obj: ObjId, k: u32) -> Word {
        let letters = vec![self.pump; k as usize];
        Word { letters, objects: vec![obj; k as usize + 1] }
    }

    pub fn instance_lhs(&self, n: u32) -> Word {
        self.lhs_prefix
            .concat(&self.power(self.lhs_prefix.target(), n))
            .concat(&self.lhs_suffix)
    }

    pub fn instance_rhs(&self, n: u32) -> Word {
        self.rhs_prefix
            .concat(&self.power(self.rhs_prefix.target(), self.p * n + self.q))
            .concat(&self.rhs_suffix)
    }

    pub fn exponent_text(&self) -> String {
        match (self.p, self.q) {
            (0, q) => q.to_string(),
            (_, 0) => "n".to_string(),
            (_, q) => format!("n+{q}"),
        }
    }
}

/// A generating 2-cell: either a declared rule or an instance of a pumped family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleRef {
    Plain(usize),
    Pumped { family: usize, n: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeCell {
    pub name: String,
    pub source: ZigZag,
    pub target: ZigZag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic(pub String);

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygraph {
    pub(crate) kind: Kind,
    pub(crate) objects: Vec<String>,
    pub(crate) generators: Vec<Generator>,
    pub(crate) rules: Vec<Rule>,
    pub(crate) pumped: Vec<PumpedRule>,
    pub(crate) three_cells: Vec<ThreeCell>,
    pub(crate) order: Option<Vec<GenId>>,
}

const MONOID_OBJECT: &str = "*";

impl Polygraph {
    pub fn monoid() -> Polygraph {
        Polygraph {
            kind: Kind::Monoid,
            objects: vec![MONOID_OBJECT.to_string()],
            generators: Vec::new(),
            rules: Vec::new(),
            pumped: Vec::new(),
            three_cells: Vec::new(),
            order: None,
        }
    }

    pub fn category<S: AsRef<str>>(objects: &[S]) -> Result<Polygraph, PresentationError> {
        let mut p = Polygraph::monoid();
        p.kind = Kind::Category;
        p.objects.clear();
        for o in objects {
            let o = o.as_ref();
            if p.objects.iter().any(|x| x == o) {
                return Err(PresentationError::Duplicate { kind: "object", name: o.to_string() });
            }
            p.objects.push(o.to_string());
        }
        if p.objects.is_empty() {
            return Err(PresentationError::Invalid("a category needs at least one object".into()));
        }
        Ok(p)
    }

    /// Monoid with the given generators and rules written as `"lhs => rhs"` pairs.
    pub fn monoid_from(gens: &[&str], rules: &[(&str, &str, &str)]) -> Result<Polygraph, PresentationError> {
        let mut p = Polygraph::monoid();
        for g in gens {
            p.add_generator(g)?;
        }
        for (name, l, r) in rules {
            let lhs = p.parse_word(l)?;
            let rhs = p.parse_word(r)?;
            p.add_rule(name, lhs, rhs)?;
        }
        Ok(p)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_monoid(&self) -> bool {
        self.kind == Kind::Monoid
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn pumped_rules(&self) -> &[PumpedRule] {
        &self.pumped
    }

    pub fn three_cells(&self) -> &[ThreeCell] {
        &self.three_cells
    }

    pub fn order(&self) -> Option<&[GenId]> {
        self.order.as_deref()
    }

    pub fn generator_id(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    fn check_fresh_name(&self, name: &str) -> Result<(), PresentationError> {
        if name == "1" || name.is_empty() {
            return Err(PresentationError::Invalid(format!("`{name}` is not a valid name")));
        }
        Ok(())
    }

    pub fn add_generator(&mut self, name: &str) -> Result<GenId, PresentationError> {
        if self.kind != Kind::Monoid {
            return Err(PresentationError::Invalid("category generators need a source and target".into()));
        }
        self.push_generator(name, 0, 0)
    }

    pub fn add_typed_generator(&mut self, name: &str, source: &str, target: &str) -> Result<GenId, PresentationError> {
        let s = self.object_id(source).ok_or_else(|| PresentationError::UnknownObject(source.into()))?;
        let t = self.object_id(target).ok_or_else(|| PresentationError::UnknownObject(target.into()))?;
        self.push_generator(name, s, t)
    }

    pub(crate) fn push_generator(&mut self, name: &str, source: ObjId, target: ObjId) -> Result<GenId, PresentationError> {
        self.check_fresh_name(name)?;
        if self.generator_id(name).is_some() {
            return Err(PresentationError::Duplicate { kind: "generator", name: name.into() });
        }
        self.generators.push(Generator { name: name.into(), source, target });
        if let Some(order) = &mut self.order {
            order.push(self.generators.len() - 1);
        }
        Ok(self.generators.len() - 1)
    }

    /// Build a word from generator ids; `default_obj` types the empty word.
    pub fn word(&self, letters: &[GenId], default_obj: ObjId) -> Result<Word, PresentationError> {
        let mut objects = Vec::with_capacity(letters.len() + 1);
        match letters.first() {
            None => objects.push(default_obj),
            Some(&g) => objects.push(self.gen_checked(g)?.source),
        }
        for (i, &g) in letters.iter().enumerate() {
            let gen = self.gen_checked(g)?;
            if gen.source != objects[i] {
                return Err(PresentationError::NotComposable(i));
            }
            objects.push(gen.target);
        }
        Ok(Word { letters: letters.to_vec(), objects })
    }

    fn gen_checked(&self, g: GenId) -> Result<&Generator, PresentationError> {
        self.generators
            .get(g)
            .ok_or_else(|| PresentationError::UnknownGenerator(format!("#{g}")))
    }

    /// Parse whitespace-separated generator names; `"1"` or `""` is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        self.parse_word_at(text, 0)
    }

    pub fn parse_word_at(&self, text: &str, default_obj: ObjId) -> Result<Word, PresentationError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            letters.push(self.generator_id(tok).ok_or_else(|| PresentationError::UnknownGenerator(tok.into()))?);
        }
        self.word(&letters, default_obj)
    }

    pub fn show_word(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".into();
        }
        let names: Vec<&str> = w.letters.iter().map(|&g| self.generators[g].name.as_str()).collect();
        names.join(" ")
    }

    pub fn add_rule(&mut self, name: &str, lhs: Word, rhs: Word) -> Result<RuleRef, PresentationError> {
        if lhs.is_identity() {
            return Err(PresentationError::IdentityLhs(name.into()));
        }
        self.push_rule(name, lhs, rhs)
    }

    /// Like [`add_rule`](Self::add_rule) but accepts an identity lhs.
    pub(crate) fn push_rule(&mut self, name: &str, lhs: Word, rhs: Word) -> Result<RuleRef, PresentationError> {
        self.check_fresh_name(name)?;
        if self.rule_name_taken(name) {
            return Err(PresentationError::Duplicate { kind: "rule", name: name.into() });
        }
        if !lhs.is_parallel(&rhs) {
            return Err(PresentationError::NotParallel(name.into()));
        }
        self.rules.push(Rule { name: name.into(), lhs, rhs });
        Ok(RuleRef::Plain(self.rules.len() - 1))
    }

    pub fn rule_name_taken(&self, name: &str) -> bool {
        self.rules.iter().any(|r| r.name == name) || self.pumped.iter().any(|r| r.stem == name)
    }

    pub fn add_pumped_rule(&mut self, rule: PumpedRule) -> Result<usize, PresentationError> {
        self.check_fresh_name(&rule.stem)?;
        if self.rule_name_taken(&rule.stem) {
            return Err(PresentationError::Duplicate { kind: "rule", name: rule.stem });
        }
        let pump = self.gen_checked(rule.pump)?;
        if pump.source != pump.target {
            return Err(PresentationError::Invalid(format!("pumped rule {}: pump letter is not an endomorphism", rule.stem)));
        }
        if rule.p > 1 {
            return Err(PresentationError::Invalid(format!("pumped rule {}: coefficient of n must be 0 or 1", rule.stem)));
        }
        let composable = rule.lhs_prefix.target() == pump.source
            && rule.lhs_suffix.source() == pump.source
            && rule.rhs_prefix.target() == pump.source
            && rule.rhs_suffix.source() == pump.source;
        if !composable {
            return Err(PresentationError::NotComposable(0));
        }
        if !rule.instance_lhs(0).is_parallel(&rule.instance_rhs(0)) {
            return Err(PresentationError::NotParallel(rule.stem));
        }
        if rule.instance_lhs(0).is_identity() {
            return Err(PresentationError::IdentityLhs(format!("{}[0]", rule.stem)));
        }
        self.pumped.push(rule);
        Ok(self.pumped.len() - 1)
    }

    pub fn add_three_cell(&mut self, cell: ThreeCell) -> Result<usize, PresentationError> {
        self.check_fresh_name(&cell.name)?;
        if self.three_cells.iter().any(|c| c.name == cell.name) {
            return Err(PresentationError::Duplicate { kind: "3-cell", name: cell.name });
        }
        if let Some(d) = self.check_three_cell(&cell) {
            return Err(PresentationError::Invalid(d.0));
        }
        self.three_cells.push(cell);
        Ok(self.three_cells.len() - 1)
    }

    /// Set the deglex generator order from names, smallest first.
    pub fn set_order<S: AsRef<str>>(&mut self, names: &[S]) -> Result<(), PresentationError> {
        let mut ids = Vec::new();
        for n in names {
            let n = n.as_ref();
            let id = self.generator_id(n).ok_or_else(|| PresentationError::UnknownGenerator(n.into()))?;
            if ids.contains(&id) {
                return Err(PresentationError::Order(format!("`{n}` listed twice")));
            }
            ids.push(id);
        }
        if ids.len() != self.generators.len() {
            return Err(PresentationError::Order("must list every generator exactly once".into()));
        }
        self.order = Some(ids);
        Ok(())
    }

    pub fn clear_order(&mut self) {
        self.order = None;
    }

    pub fn lhs(&self, r: RuleRef) -> Cow<'_, Word> {
        match r {
            RuleRef::Plain(i) => Cow::Borrowed(&self.rules[i].lhs),
            RuleRef::Pumped { family, n } => Cow::Owned(self.pumped[family].instance_lhs(n)),
        }
    }

    pub fn rhs(&self, r: RuleRef) -> Cow<'_, Word> {
        match r {
            RuleRef::Plain(i) => Cow::Borrowed(&self.rules[i].rhs),
            RuleRef::Pumped { family, n } => Cow::Owned(self.pumped[family].instance_rhs(n)),
        }
    }

    pub fn has_rule(&self, r: RuleRef) -> bool {
        match r {
            RuleRef::Plain(i) => i < self.rules.len(),
            RuleRef::Pumped { family, .. } => family < self.pumped.len(),
        }
    }

    pub fn rule_name(&self, r: RuleRef) -> String {
        match r {
            RuleRef::Plain(i) => self.rules[i].name.clone(),
            RuleRef::Pumped { family, n } => format!("{}[{n}]", self.pumped[family].stem),
        }
    }

    /// Resolve `name` or `stem[n]`.
    pub fn rule_ref(&self, name: &str) -> Option<RuleRef> {
        if let Some(i) = self.rules.iter().position(|r| r.name == name) {
            return Some(RuleRef::Plain(i));
        }
        let (stem, rest) = name.split_once('[')?;
        let n: u32 = rest.strip_suffix(']')?.trim().parse().ok()?;
        let family = self.pumped.iter().position(|r| r.stem == stem)?;
        Some(RuleRef::Pumped { family, n })
    }

    /// Plain rules in declaration order, then pumped instances with `n ≤ pump_bound`.
    pub fn rule_refs(&self, pump_bound: u32) -> Vec<RuleRef> {
        let mut out: Vec<RuleRef> = (0..self.rules.len()).map(RuleRef::Plain).collect();
        for family in 0..self.pumped.len() {
            out.extend((0..=pump_bound).map(|n| RuleRef::Pumped { family, n }));
        }
        out
    }

    pub fn show_rule(&self, r: RuleRef) -> String {
        format!("{}: {} => {}", self.rule_name(r), self.show_word(&self.lhs(r)), self.show_word(&self.rhs(r)))
    }

    /// Drop the 3-cells, keeping the underlying 2-polygraph.
    pub fn two_skeleton(&self) -> Polygraph {
        let mut p = self.clone();
        p.three_cells.clear();
        p
    }

    fn check_three_cell(&self, c: &ThreeCell) -> Option<Diagnostic> {
        let s = c.source.target(self);
        let t = c.target.target(self);
        match (s, t) {
            (Ok(s), Ok(t)) if c.source.source() == c.target.source() && s == t => None,
            (Ok(_), Ok(_)) => Some(Diagnostic(format!("3-cell {}: boundary not parallel", c.name))),
            _ => Some(Diagnostic(format!("3-cell {}: boundary path invalid", c.name))),
        }
    }

    fn check_word(&self, w: &Word) -> bool {
        match self.word(&w.letters, w.source()) {
            Ok(v) => v == *w,
            Err(_) => false,
        }
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut seen_objects = std::collections::HashSet::new();
        for o in &self.objects {
            if !seen_objects.insert(o) {
                out.push(Diagnostic(format!("object {o}: duplicate name")));
            }
        }
        if self.kind == Kind::Monoid && self.objects.len() != 1 {
            out.push(Diagnostic("monoid: exactly one object required".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for g in &self.generators {
            if !seen.insert(&g.name) {
                out.push(Diagnostic(format!("generator {}: duplicate name", g.name)));
            }
            if g.source >= self.objects.len() || g.target >= self.objects.len() {
                out.push(Diagnostic(format!("generator {}: unknown object", g.name)));
            }
        }
        let mut rule_names = std::collections::HashSet::new();
        for r in &self.rules {
            if !rule_names.insert(r.name.clone()) {
                out.push(Diagnostic(format!("rule {}: duplicate name", r.name)));
            }
            if !self.check_word(&r.lhs) || !self.check_word(&r.rhs) {
                out.push(Diagnostic(format!("rule {}: ill-formed word", r.name)));
                continue;
            }
            if r.lhs.is_identity() {
                out.push(Diagnostic(format!("rule {}: lhs is an identity", r.name)));
            }
            if !r.lhs.is_parallel(&r.rhs) {
                out.push(Diagnostic(format!("rule {}: lhs and rhs not parallel", r.name)));
            }
        }
        for r in &self.pumped {
            if !rule_names.insert(r.stem.clone()) {
                out.push(Diagnostic(format!("rule {}: duplicate name", r.stem)));
            }
            match self.generators.get(r.pump) {
                Some(g) if g.source == g.target => {
                    let l = r.instance_lhs(0);
                    if l.is_identity() {
                        out.push(Diagnostic(format!("rule {}: lhs is an identity", r.stem)));
                    }
                    if !l.is_parallel(&r.instance_rhs(0)) {
                        out.push(Diagnostic(format!("rule {}: lhs and rhs not parallel", r.stem)));
                    }
                }
                _ => out.push(Diagnostic(format!("rule {}: pump letter invalid", r.stem))),
            }
            if r.p > 1 {
                out.push(Diagnostic(format!("rule {}: coefficient of n must be 0 or 1", r.stem)));
            }
        }
        let mut cell_names = std::collections::HashSet::new();
        for c in &self.three_cells {
            if !cell_names.insert(&c.name) {
                out.push(Diagnostic(format!("3-cell {}: duplicate name", c.name)));
            }
            if let Some(d) = self.check_three_cell(c) {
                out.push(d);
            }
        }
        if let Some(order) = &self.order {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != order.len() || sorted != (0..self.generators.len()).collect::<Vec<_>>() {
                out.push(Diagnostic("order: must cover every generator exactly once".into()));
            }
        }
        out
    }
}
