//! Local and critical branchings, their resolution, and confluence.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::presentation::{Polygraph, RuleRef, Word};
use crate::rewrite::{
    check_deglex_termination, normalize, CertReport, DeglexOrder, Limits, RewriteError, RewriteStep, Strategy,
    TwoCellPath,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchingKind {
    Aspherical,
    Peiffer,
    Overlapping,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BranchingError {
    #[error("the two steps rewrite different words")]
    DifferentWords,
    #[error("a step is backward")]
    Backward,
}

/// Two forward steps on one word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalBranching {
    pub source: Word,
    pub first: RewriteStep,
    pub second: RewriteStep,
    pub kind: BranchingKind,
}

impl LocalBranching {
    /// Orders the pair leftmost first (then by rule) and classifies it.
    pub fn new(p: &Polygraph, f: RewriteStep, g: RewriteStep) -> Result<LocalBranching, BranchingError> {
        let kind = classify_local_branching(p, &f, &g)?;
        let source = f.redex_word(p);
        let (first, second) = if (g.position(), g.rule) < (f.position(), f.rule) { (g, f) } else { (f, g) };
        Ok(LocalBranching { source, first, second, kind })
    }

    /// Overlapping, and the two redexes cover the whole source.
    pub fn is_critical(&self, p: &Polygraph) -> bool {
        let (a0, a1) = self.first.span(p);
        let (b0, b1) = self.second.span(p);
        self.kind == BranchingKind::Overlapping && a0.min(b0) == 0 && a1.max(b1) == self.source.len()
    }

    pub fn offset(&self) -> usize {
        self.second.position() - self.first.position()
    }
}

pub fn classify_local_branching(p: &Polygraph, f: &RewriteStep, g: &RewriteStep) -> Result<BranchingKind, BranchingError> {
    if !f.is_forward() || !g.is_forward() {
        return Err(BranchingError::Backward);
    }
    if f.redex_word(p) != g.redex_word(p) {
        return Err(BranchingError::DifferentWords);
    }
    if f.rule == g.rule && f.position() == g.position() {
        return Ok(BranchingKind::Aspherical);
    }
    let (a0, a1) = f.span(p);
    let (b0, b1) = g.span(p);
    if a1 <= b0 || b1 <= a0 {
        Ok(BranchingKind::Peiffer)
    } else {
        Ok(BranchingKind::Overlapping)
    }
}

pub type CriticalBranching = LocalBranching;

/// Critical branchings with `a` at position 0 and `b` at some offset.
fn overlaps(p: &Polygraph, a: RuleRef, b: RuleRef, out: &mut Vec<LocalBranching>) {
    let la = p.lhs(a);
    let lb = p.lhs(b);
    if la.is_empty() || lb.is_empty() {
        return;
    }
    let mut push = |source: Word, k: usize| {
        let f = RewriteStep::at(p, &source, a, 0);
        let g = RewriteStep::at(p, &source, b, k);
        if let Ok(br) = LocalBranching::new(p, f, g) {
            debug_assert!(br.is_critical(p));
            out.push(br);
        }
    };
    for k in 1..la.len() {
        let overlap = la.len() - k;
        if overlap < lb.len() && la.letters()[k..] == lb.letters()[..overlap] {
            push(la.concat(&lb.suffix(overlap)), k);
        }
    }
    if lb.len() <= la.len() {
        for k in 0..=la.len() - lb.len() {
            if (a != b || k != 0) && la.occurs_at(&lb, k) {
                push(la.clone().into_owned(), k);
            }
        }
    }
}

pub(crate) fn sort_key(b: &LocalBranching) -> (RuleRef, RuleRef, usize, Word) {
    (b.first.rule, b.second.rule, b.offset(), b.source.clone())
}

fn dedup_sorted(mut v: Vec<LocalBranching>) -> Vec<LocalBranching> {
    let mut seen = HashSet::new();
    v.retain(|b| seen.insert((b.source.clone(), b.first.clone(), b.second.clone())));
    v.sort_by_key(sort_key);
    v
}

/// Critical branchings between two given rules, both orders.
pub fn critical_branchings_between(p: &Polygraph, a: RuleRef, b: RuleRef) -> Vec<CriticalBranching> {
    let mut out = Vec::new();
    overlaps(p, a, b, &mut out);
    if a != b {
        overlaps(p, b, a, &mut out);
    }
    dedup_sorted(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalReport {
    pub branchings: Vec<CriticalBranching>,
    /// Pumped families were only instantiated up to the pump bound.
    pub truncated: bool,
}

impl CriticalReport {
    /// Group instances by (stem pair, offset) for display.
    pub fn families(&self, p: &Polygraph) -> Vec<((String, String, usize), Vec<usize>)> {
        let stem = |r: RuleRef| match r {
            RuleRef::Plain(_) => p.rule_name(r),
            RuleRef::Pumped { family, .. } => p.pumped_rules()[family].stem.clone(),
        };
        let mut groups: BTreeMap<(String, String, usize), Vec<usize>> = BTreeMap::new();
        let mut order = Vec::new();
        for (i, b) in self.branchings.iter().enumerate() {
            let key = (stem(b.first.rule), stem(b.second.rule), b.offset());
            if !groups.contains_key(&key) {
                order.push(key.clone());
            }
            groups.entry(key).or_default().push(i);
        }
        order.into_iter().map(|k| {
            let v = groups.remove(&k).unwrap();
            (k, v)
        }).collect()
    }
}

pub fn enumerate_critical_branchings(p: &Polygraph, pump_bound: u32) -> CriticalReport {
    let refs = p.rule_refs(pump_bound);
    let mut out = Vec::new();
    for &a in &refs {
        for &b in &refs {
            overlaps(p, a, b, &mut out);
        }
    }
    CriticalReport { branchings: dedup_sorted(out), truncated: !p.pumped_rules().is_empty() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub branching: LocalBranching,
    pub f_prime: TwoCellPath,
    pub g_prime: TwoCellPath,
    pub join: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolutionOutcome {
    Confluent(Resolution),
    NotConfluent { first_nf: Word, second_nf: Word },
    Unknown,
}

impl ResolutionOutcome {
    pub fn is_confluent(&self) -> bool {
        matches!(self, ResolutionOutcome::Confluent(_))
    }
}

/// Normalize both branches; confluent iff the normal forms agree.
pub fn resolve_branching(p: &Polygraph, b: &LocalBranching, strategy: Strategy, limits: Limits) -> ResolutionOutcome {
    let v = b.first.reduct_word(p);
    let w = b.second.reduct_word(p);
    let (Ok((vn, fp)), Ok((wn, gp))) = (normalize(p, &v, strategy, limits), normalize(p, &w, strategy, limits)) else {
        return ResolutionOutcome::Unknown;
    };
    if vn == wn {
        ResolutionOutcome::Confluent(Resolution { branching: b.clone(), f_prime: fp, g_prime: gp, join: vn })
    } else {
        ResolutionOutcome::NotConfluent { first_nf: vn, second_nf: wn }
    }
}

/// How termination was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TerminationEvidence {
    Deglex(DeglexOrder),
    /// A sampled interpretation check; only accepted when the caller acknowledges it is not a proof.
    Sampled { report: CertReport, acknowledged: bool },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConvergenceError {
    #[error("termination not certified: {0}")]
    TerminationNotCertified(String),
    #[error("not confluent: critical branching on `{source_word}` gives `{first_nf}` and `{second_nf}`")]
    NotConfluent { source_word: String, first_nf: String, second_nf: String },
    #[error("fuel exhausted while resolving the critical branching on `{0}`")]
    Unknown(String),
}

fn check_termination(p: &Polygraph, evidence: &TerminationEvidence, limits: Limits) -> Result<(), ConvergenceError> {
    match evidence {
        TerminationEvidence::Deglex(order) => {
            let rep = check_deglex_termination(p, order, limits.pump_bound);
            match rep.first_failure() {
                None => Ok(()),
                Some(f) => Err(ConvergenceError::TerminationNotCertified(format!("rule {}: {}", f.rule, f.note))),
            }
        }
        TerminationEvidence::Sampled { report, acknowledged } => {
            if !report.passed() {
                Err(ConvergenceError::TerminationNotCertified(format!("certificate failed: {:?}", report.verdict)))
            } else if !acknowledged {
                Err(ConvergenceError::TerminationNotCertified("sampled certificate not acknowledged".into()))
            } else {
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub critical: CriticalReport,
    pub outcomes: Vec<ResolutionOutcome>,
}

impl ConfluenceReport {
    pub fn confluent(&self) -> bool {
        self.outcomes.iter().all(ResolutionOutcome::is_confluent)
    }
}

/// Resolve every critical branching; requires certified termination.
pub fn decide_confluence(
    p: &Polygraph,
    evidence: &TerminationEvidence,
    limits: Limits,
) -> Result<ConfluenceReport, ConvergenceError> {
    check_termination(p, evidence, limits)?;
    let critical = enumerate_critical_branchings(p, limits.pump_bound);
    let outcomes = critical
        .branchings
        .iter()
        .map(|b| resolve_branching(p, b, Strategy::Leftmost, limits))
        .collect();
    Ok(ConfluenceReport { critical, outcomes })
}

/// A polygraph whose termination and confluence have been checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentPolygraph {
    polygraph: Polygraph,
    limits: Limits,
    truncated: bool,
    sampled: bool,
}

impl ConvergentPolygraph {
    pub fn certify(
        p: Polygraph,
        evidence: &TerminationEvidence,
        limits: Limits,
    ) -> Result<ConvergentPolygraph, ConvergenceError> {
        let rep = decide_confluence(&p, evidence, limits)?;
        for (b, o) in rep.critical.branchings.iter().zip(&rep.outcomes) {
            match o {
                ResolutionOutcome::Confluent(_) => {}
                ResolutionOutcome::NotConfluent { first_nf, second_nf } => {
                    return Err(ConvergenceError::NotConfluent {
                        source_word: p.show_word(&b.source),
                        first_nf: p.show_word(first_nf),
                        second_nf: p.show_word(second_nf),
                    })
                }
                ResolutionOutcome::Unknown => return Err(ConvergenceError::Unknown(p.show_word(&b.source))),
            }
        }
        Ok(ConvergentPolygraph {
            truncated: rep.critical.truncated,
            sampled: matches!(evidence, TerminationEvidence::Sampled { .. }),
            polygraph: p,
            limits,
        })
    }

    /// Certify with the deglex order of the file (or declaration order).
    pub fn certify_deglex(p: Polygraph, limits: Limits) -> Result<ConvergentPolygraph, ConvergenceError> {
        let order = DeglexOrder::of(&p);
        ConvergentPolygraph::certify(p, &TerminationEvidence::Deglex(order), limits)
    }

    /// For systems that are convergent by construction.
    pub(crate) fn trusted(p: Polygraph, limits: Limits, truncated: bool, sampled: bool) -> ConvergentPolygraph {
        ConvergentPolygraph { polygraph: p, limits, truncated, sampled }
    }

    pub fn polygraph(&self) -> &Polygraph {
        &self.polygraph
    }

    pub fn into_polygraph(self) -> Polygraph {
        self.polygraph
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Confluence was only checked on pumped instances up to the bound.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Termination rests on a sampled certificate.
    pub fn sampled(&self) -> bool {
        self.sampled
    }

    pub fn normalize(&self, w: &Word) -> Result<(Word, TwoCellPath), RewriteError> {
        normalize(&self.polygraph, w, Strategy::Leftmost, self.limits)
    }

    pub fn normal_form(&self, w: &Word) -> Result<Word, RewriteError> {
        self.normalize(w).map(|(w, _)| w)
    }

    /// The word problem: equal normal forms.
    pub fn word_eq(&self, u: &Word, v: &Word) -> Result<bool, RewriteError> {
        if !u.is_parallel(v) {
            return Ok(false);
        }
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }
}

pub fn word_eq(cp: &ConvergentPolygraph, u: &Word, v: &Word) -> Result<bool, RewriteError> {
    cp.word_eq(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::PumpedRule;

    fn b3() -> Polygraph {
        let mut p = Polygraph::monoid_from(
            &["s", "t", "a"],
            &[("alpha", "t a", "a s"), ("beta", "s t", "a"), ("gamma", "s a s", "a a"), ("delta", "s a a", "a a t")],
        )
        .unwrap();
        p.set_order(&["a", "s", "t"]).unwrap();
        p
    }

    fn xyx() -> Polygraph {
        Polygraph::monoid_from(&["x", "y"], &[("alpha", "x y x", "y y")]).unwrap()
    }

    fn step(p: &Polygraph, w: &str, rule: &str, pos: usize) -> RewriteStep {
        RewriteStep::at(p, &p.parse_word(w).unwrap(), p.rule_ref(rule).unwrap(), pos)
    }

    #[test]
    fn classification() {
        let p = xyx();
        let f = step(&p, "x y x", "alpha", 0);
        assert_eq!(classify_local_branching(&p, &f, &f), Ok(BranchingKind::Aspherical));
        let f = step(&p, "x y x x y x", "alpha", 0);
        let g = step(&p, "x y x x y x", "alpha", 3);
        assert_eq!(classify_local_branching(&p, &f, &g), Ok(BranchingKind::Peiffer));
        let q = b3();
        let f = step(&q, "s t a", "beta", 0);
        let g = step(&q, "s t a", "alpha", 1);
        assert_eq!(classify_local_branching(&q, &f, &g), Ok(BranchingKind::Overlapping));
        let h = step(&q, "s t", "beta", 0);
        assert_eq!(classify_local_branching(&q, &f, &h), Err(BranchingError::DifferentWords));
    }

    #[test]
    fn b3_has_four_confluent_critical_branchings() {
        let p = b3();
        let rep = enumerate_critical_branchings(&p, 0);
        let sources: Vec<String> = rep.branchings.iter().map(|b| p.show_word(&b.source)).collect();
        assert_eq!(sources, vec!["s t a", "s a s t", "s a s a s", "s a s a a"]);
        let c = decide_confluence(&p, &TerminationEvidence::Deglex(DeglexOrder::of(&p)), Limits::default()).unwrap();
        assert!(c.confluent());
        match &c.outcomes[0] {
            ResolutionOutcome::Confluent(r) => assert_eq!(p.show_word(&r.join), "a a"),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn xyx_critical_branching() {
        let p = xyx();
        let rep = enumerate_critical_branchings(&p, 0);
        assert_eq!(rep.branchings.len(), 1);
        let b = &rep.branchings[0];
        assert_eq!(p.show_word(&b.source), "x y x y x");
        assert_eq!(b.offset(), 2);
        match resolve_branching(&p, b, Strategy::Leftmost, Limits::default()) {
            ResolutionOutcome::NotConfluent { first_nf, second_nf } => {
                assert_eq!(p.show_word(&first_nf), "y y y x");
                assert_eq!(p.show_word(&second_nf), "x y y y");
            }
            o => panic!("{o:?}"),
        }
        let mut q = p.clone();
        q.add_rule("beta", q.parse_word("y y y x").unwrap(), q.parse_word("x y y y").unwrap()).unwrap();
        assert!(resolve_branching(&q, b, Strategy::Leftmost, Limits::default()).is_confluent());
    }

    #[test]
    fn duplicate_lhs_is_critical() {
        let p = Polygraph::monoid_from(&["a", "b"], &[("r", "a a", "a"), ("s", "a a", "b")]).unwrap();
        let rep = enumerate_critical_branchings(&p, 0);
        let zero: Vec<_> = rep.branchings.iter().filter(|b| b.offset() == 0).collect();
        assert_eq!(zero.len(), 1);
    }

    #[test]
    fn pumped_family_alone_has_no_critical_branching() {
        let mut p = Polygraph::monoid_from(&["a", "b", "t"], &[]).unwrap();
        let r = PumpedRule {
            stem: "alpha".into(),
            lhs_prefix: p.parse_word("a").unwrap(),
            lhs_suffix: p.parse_word("b").unwrap(),
            rhs_prefix: Word::identity(0),
            rhs_suffix: Word::identity(0),
            pump: 2,
            p: 0,
            q: 0,
        };
        p.add_pumped_rule(r).unwrap();
        let rep = enumerate_critical_branchings(&p, 6);
        assert!(rep.branchings.is_empty());
        assert!(rep.truncated);
    }

    #[test]
    fn confluence_needs_termination() {
        let p = Polygraph::monoid_from(&["a", "t", "x"], &[("beta", "x a", "a t x")]).unwrap();
        let err = decide_confluence(&p, &TerminationEvidence::Deglex(DeglexOrder::of(&p)), Limits::default());
        assert!(matches!(err, Err(ConvergenceError::TerminationNotCertified(_))));
        let free = Polygraph::monoid_from(&["a"], &[]).unwrap();
        let rep = decide_confluence(&free, &TerminationEvidence::Deglex(DeglexOrder::of(&free)), Limits::default()).unwrap();
        assert!(rep.confluent());
    }

    #[test]
    fn word_problem() {
        let cp = ConvergentPolygraph::certify_deglex(b3(), Limits::default()).unwrap();
        let p = cp.polygraph();
        let u = p.parse_word("s t s").unwrap();
        let v = p.parse_word("t s t").unwrap();
        assert!(word_eq(&cp, &u, &v).unwrap());
        assert!(word_eq(&cp, &u, &u).unwrap());
        assert!(!word_eq(&cp, &u, &p.parse_word("s").unwrap()).unwrap());
        assert!(ConvergentPolygraph::certify_deglex(xyx(), Limits::default()).is_err());
    }
}
