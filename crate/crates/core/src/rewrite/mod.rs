//! Rewriting steps, 2-cell paths, normalization, termination orders.

mod certificate;
mod normalize;
mod order;

use thiserror::Error;

use crate::presentation::{Polygraph, RuleRef, Word};

pub use certificate::{
    check_interpretation_certificate, parse_certificate, Affine, CertReport, CertVerdict, ExpPoly,
    InterpretationCert,
};
pub use normalize::{apply_step, find_redexes, normal_form, normalize, redexes_at, Limits, Redex, RewriteError, Strategy};
pub use order::{check_deglex_termination, DeglexOrder, OrderError, Orientation, RuleVerdict, TerminationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

/// `left · rule · right`, applied forward or backward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    pub left: Word,
    pub rule: RuleRef,
    pub right: Word,
    pub direction: Direction,
}

impl RewriteStep {
    pub fn forward(left: Word, rule: RuleRef, right: Word) -> RewriteStep {
        RewriteStep { left, rule, right, direction: Direction::Forward }
    }

    /// The forward step applying `rule` at `position` in `w`; `w` must contain the redex.
    pub fn at(p: &Polygraph, w: &Word, rule: RuleRef, position: usize) -> RewriteStep {
        let len = p.lhs(rule).len();
        RewriteStep::forward(w.prefix(position), rule, w.suffix(position + len))
    }

    pub fn position(&self) -> usize {
        self.left.len()
    }

    pub fn is_forward(&self) -> bool {
        self.direction == Direction::Forward
    }

    pub fn inverse(&self) -> RewriteStep {
        let direction = match self.direction {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        };
        RewriteStep { direction, ..self.clone() }
    }

    pub fn whisker(&self, u: &Word, v: &Word) -> RewriteStep {
        RewriteStep {
            left: u.concat(&self.left),
            rule: self.rule,
            right: self.right.concat(v),
            direction: self.direction,
        }
    }

    fn composable(&self, p: &Polygraph) -> bool {
        if !p.has_rule(self.rule) {
            return false;
        }
        let l = p.lhs(self.rule);
        self.left.target() == l.source() && l.target() == self.right.source()
    }

    /// `left · lhs · right`, whatever the direction.
    pub fn redex_word(&self, p: &Polygraph) -> Word {
        self.left.concat(&p.lhs(self.rule)).concat(&self.right)
    }

    pub fn reduct_word(&self, p: &Polygraph) -> Word {
        self.left.concat(&p.rhs(self.rule)).concat(&self.right)
    }

    pub fn source(&self, p: &Polygraph) -> Word {
        match self.direction {
            Direction::Forward => self.redex_word(p),
            Direction::Backward => self.reduct_word(p),
        }
    }

    pub fn target(&self, p: &Polygraph) -> Word {
        match self.direction {
            Direction::Forward => self.reduct_word(p),
            Direction::Backward => self.redex_word(p),
        }
    }

    /// Redex span `[start, end)` in the redex word.
    pub fn span(&self, p: &Polygraph) -> (usize, usize) {
        let s = self.position();
        (s, s + p.lhs(self.rule).len())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("step {0} does not apply to the running word")]
    Mismatch(usize),
    #[error("step {0} is ill-typed")]
    IllTyped(usize),
    #[error("step {0} is backward inside a positive path")]
    Backward(usize),
    #[error("paths are not composable")]
    NotComposable,
}

/// A 2-cell of the free (2,1)-category: signed steps from a source word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZigZag {
    source: Word,
    steps: Vec<RewriteStep>,
}

impl ZigZag {
    pub fn identity(w: Word) -> ZigZag {
        ZigZag { source: w, steps: Vec::new() }
    }

    pub fn new(source: Word, steps: Vec<RewriteStep>) -> ZigZag {
        ZigZag { source, steps }
    }

    /// Single-step zigzag.
    pub fn step(p: &Polygraph, step: RewriteStep) -> ZigZag {
        ZigZag { source: step.source(p), steps: vec![step] }
    }

    pub fn source(&self) -> &Word {
        &self.source
    }

    pub fn steps(&self) -> &[RewriteStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.steps.iter().all(RewriteStep::is_forward)
    }

    /// Fold the steps, checking each applies to the running word.
    pub fn target(&self, p: &Polygraph) -> Result<Word, PathError> {
        let mut cur = self.source.clone();
        for (i, s) in self.steps.iter().enumerate() {
            if !s.composable(p) {
                return Err(PathError::IllTyped(i));
            }
            if s.source(p) != cur {
                return Err(PathError::Mismatch(i));
            }
            cur = s.target(p);
        }
        Ok(cur)
    }

    /// Words visited, source first.
    pub fn words(&self, p: &Polygraph) -> Result<Vec<Word>, PathError> {
        let mut out = vec![self.source.clone()];
        for (i, s) in self.steps.iter().enumerate() {
            if !s.composable(p) {
                return Err(PathError::IllTyped(i));
            }
            if s.source(p) != *out.last().unwrap() {
                return Err(PathError::Mismatch(i));
            }
            out.push(s.target(p));
        }
        Ok(out)
    }

    pub fn push(&mut self, step: RewriteStep) {
        self.steps.push(step);
    }

    /// `self ⋆₁ other`; the caller guarantees the words meet.
    pub fn then(&self, other: &ZigZag) -> ZigZag {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        ZigZag { source: self.source.clone(), steps }
    }

    pub fn inverse(&self, p: &Polygraph) -> Result<ZigZag, PathError> {
        let target = self.target(p)?;
        Ok(ZigZag { source: target, steps: self.steps.iter().rev().map(RewriteStep::inverse).collect() })
    }

    pub fn whisker(&self, u: &Word, v: &Word) -> ZigZag {
        ZigZag {
            source: u.concat(&self.source).concat(v),
            steps: self.steps.iter().map(|s| s.whisker(u, v)).collect(),
        }
    }

    /// Horizontal composite `self ⋆₀ other` as `self·s(other) ⋆₁ t(self)·other`.
    pub fn horizontal(&self, other: &ZigZag, p: &Polygraph) -> Result<ZigZag, PathError> {
        let t = self.target(p)?;
        let one_l = Word::identity(self.source.source());
        let one_r = Word::identity(other.source.target());
        let left = self.whisker(&one_l, &other.source);
        let right = other.whisker(&t, &one_r);
        Ok(left.then(&right))
    }

    /// Cancel adjacent step/inverse pairs.
    pub fn reduced(&self) -> ZigZag {
        let mut out: Vec<RewriteStep> = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            match out.last() {
                Some(last)
                    if last.rule == s.rule
                        && last.left == s.left
                        && last.right == s.right
                        && last.direction != s.direction =>
                {
                    out.pop();
                }
                _ => out.push(s.clone()),
            }
        }
        ZigZag { source: self.source.clone(), steps: out }
    }

    /// Equality in the free groupoid on steps (no exchange moves).
    pub fn equivalent(&self, other: &ZigZag) -> bool {
        self.source == other.source && self.reduced().steps == other.reduced().steps
    }

    pub fn rules_used(&self) -> impl Iterator<Item = RuleRef> + '_ {
        self.steps.iter().map(|s| s.rule)
    }
}

/// A positive 2-cell: forward steps only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoCellPath(ZigZag);

impl TwoCellPath {
    pub fn identity(w: Word) -> TwoCellPath {
        TwoCellPath(ZigZag::identity(w))
    }

    pub fn new(source: Word, steps: Vec<RewriteStep>) -> Result<TwoCellPath, PathError> {
        if let Some(i) = steps.iter().position(|s| !s.is_forward()) {
            return Err(PathError::Backward(i));
        }
        Ok(TwoCellPath(ZigZag::new(source, steps)))
    }

    pub fn from_zigzag(z: ZigZag) -> Result<TwoCellPath, PathError> {
        TwoCellPath::new(z.source, z.steps)
    }

    pub fn source(&self) -> &Word {
        self.0.source()
    }

    pub fn steps(&self) -> &[RewriteStep] {
        self.0.steps()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn target(&self, p: &Polygraph) -> Result<Word, PathError> {
        self.0.target(p)
    }

    pub fn push(&mut self, step: RewriteStep) {
        assert!(step.is_forward());
        self.0.push(step);
    }

    pub fn then(&self, other: &TwoCellPath) -> TwoCellPath {
        TwoCellPath(self.0.then(&other.0))
    }

    pub fn whisker(&self, u: &Word, v: &Word) -> TwoCellPath {
        TwoCellPath(self.0.whisker(u, v))
    }

    pub fn as_zigzag(&self) -> &ZigZag {
        &self.0
    }

    pub fn into_zigzag(self) -> ZigZag {
        self.0
    }

    /// Drop the first `k` steps; `start` is the word they reach.
    pub fn drop_front(&self, k: usize, start: Word) -> TwoCellPath {
        TwoCellPath(ZigZag::new(start, self.steps()[k..].to_vec()))
    }
}

impl From<TwoCellPath> for ZigZag {
    fn from(p: TwoCellPath) -> ZigZag {
        p.0
    }
}

pub fn show_step(p: &Polygraph, s: &RewriteStep) -> String {
    let mark = if s.is_forward() { "" } else { "^-" };
    format!("{} * {}{} * {}", p.show_word(&s.left), p.rule_name(s.rule), mark, p.show_word(&s.right))
}

/// Path syntax: steps joined by ` . `, or `id(w)` for an identity.
pub fn show_zigzag(p: &Polygraph, z: &ZigZag) -> String {
    if z.is_identity() {
        return format!("id({})", p.show_word(z.source()));
    }
    z.steps().iter().map(|s| show_step(p, s)).collect::<Vec<_>>().join(" . ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aa() -> Polygraph {
        Polygraph::monoid_from(&["a"], &[("mu", "a a", "a")]).unwrap()
    }

    #[test]
    fn step_words() {
        let p = aa();
        let w = p.parse_word("a a a").unwrap();
        let s = RewriteStep::at(&p, &w, RuleRef::Plain(0), 1);
        assert_eq!(p.show_word(&s.source(&p)), "a a a");
        assert_eq!(p.show_word(&s.target(&p)), "a a");
        let b = s.inverse();
        assert_eq!(b.source(&p), s.target(&p));
        assert_eq!(show_step(&p, &b), "a * mu^- * 1");
    }

    #[test]
    fn zigzag_reduction_cancels_inverse_pairs() {
        let p = aa();
        let w = p.parse_word("a a").unwrap();
        let s = RewriteStep::at(&p, &w, RuleRef::Plain(0), 0);
        let z = ZigZag::new(w.clone(), vec![s.clone(), s.inverse()]);
        assert_eq!(z.target(&p).unwrap(), w);
        assert!(z.reduced().is_identity());
        assert!(z.equivalent(&ZigZag::identity(w)));
    }

    #[test]
    fn target_detects_mismatch() {
        let p = aa();
        let w = p.parse_word("a a").unwrap();
        let s = RewriteStep::at(&p, &w, RuleRef::Plain(0), 0);
        let z = ZigZag::new(w, vec![s.clone(), s]);
        assert_eq!(z.target(&p), Err(PathError::Mismatch(1)));
    }

    #[test]
    fn horizontal_composite() {
        let p = aa();
        let w = p.parse_word("a a").unwrap();
        let f = ZigZag::step(&p, RewriteStep::at(&p, &w, RuleRef::Plain(0), 0));
        let h = f.horizontal(&f, &p).unwrap();
        assert_eq!(p.show_word(h.source()), "a a a a");
        assert_eq!(p.show_word(&h.target(&p).unwrap()), "a a");
        assert_eq!(show_zigzag(&p, &h), "1 * mu * a a . a * mu * 1");
    }
}
