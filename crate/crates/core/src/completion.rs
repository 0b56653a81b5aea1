//! Knuth–Bendix completion and reduction of convergent presentations.

use std::collections::VecDeque;

use thiserror::Error;

use crate::branchings::{critical_branchings_between, enumerate_critical_branchings, sort_key, ConvergentPolygraph, LocalBranching};
use crate::presentation::{tietze_apply, Polygraph, RuleRef, TietzeError, TietzeMove, Word};
use crate::rewrite::{
    check_deglex_termination, find_redexes, normalize, DeglexOrder, Limits, Orientation, RewriteStep, Strategy, ZigZag,
};

const GREEK: [&str; 24] = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa", "lambda", "mu", "nu", "xi",
    "omicron", "pi", "rho", "sigma", "tau", "upsilon", "phi", "chi", "psi", "omega",
];

pub const DEFAULT_MAX_RULES: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionError {
    #[error("termination not certified: rule {rule}: {note}")]
    NotTerminating { rule: String, note: String },
    #[error("pumped rule families are not supported here")]
    PumpedUnsupported,
    #[error("normal forms `{0}` and `{1}` differ but cannot be oriented")]
    Unorientable(String, String),
    #[error("fuel exhausted while normalizing `{0}`")]
    Fuel(String),
    #[error("reduction step failed: {0}")]
    Tietze(#[from] TietzeError),
    #[error("rule {0}: the remaining rules do not rewrite its lhs to its rhs")]
    NotDerivable(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionStatus {
    Completed,
    FuelExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceOutcome {
    Joined,
    /// Index of the rule added for this branching.
    Added(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub branching: LocalBranching,
    pub first_nf: Word,
    pub second_nf: Word,
    pub outcome: TraceOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionResult {
    pub polygraph: Polygraph,
    /// Indices into `polygraph.rules()`, in the order they were added.
    pub added: Vec<usize>,
    pub trace: Vec<TraceEntry>,
    pub status: CompletionStatus,
}

fn fresh_name(p: &Polygraph) -> String {
    GREEK
        .iter()
        .map(|s| s.to_string())
        .chain((0..).map(|k| format!("r{k}")))
        .find(|n| !p.rule_name_taken(n) && p.generator_id(n).is_none())
        .unwrap()
}

/// Complete under a deglex order, examining critical branchings first in, first out.
///
/// `max_rules` bounds the total number of rules of the result.
pub fn knuth_bendix(
    p: &Polygraph,
    order: &DeglexOrder,
    max_rules: usize,
    limits: Limits,
) -> Result<CompletionResult, CompletionError> {
    if !p.pumped_rules().is_empty() {
        return Err(CompletionError::PumpedUnsupported);
    }
    if let Some(f) = check_deglex_termination(p, order, 0).first_failure() {
        return Err(CompletionError::NotTerminating { rule: f.rule.clone(), note: f.note.clone() });
    }
    let mut q = p.clone();
    let mut queue: VecDeque<LocalBranching> = enumerate_critical_branchings(&q, 0).branchings.into();
    let mut added = Vec::new();
    let mut trace = Vec::new();
    while let Some(b) = queue.pop_front() {
        let nf = |w: &Word| {
            normalize(&q, w, Strategy::Leftmost, limits)
                .map(|(w, _)| w)
                .map_err(|_| CompletionError::Fuel(q.show_word(w)))
        };
        let v = nf(&b.first.reduct_word(&q))?;
        let w = nf(&b.second.reduct_word(&q))?;
        if v == w {
            trace.push(TraceEntry { branching: b, first_nf: v, second_nf: w, outcome: TraceOutcome::Joined });
            continue;
        }
        let (lhs, rhs) = match order.orient(&v, &w) {
            Ok(Orientation::LeftToRight) => (v.clone(), w.clone()),
            Ok(Orientation::RightToLeft) => (w.clone(), v.clone()),
            _ => return Err(CompletionError::Unorientable(q.show_word(&v), q.show_word(&w))),
        };
        if q.rules().len() >= max_rules {
            return Ok(CompletionResult { polygraph: q, added, trace, status: CompletionStatus::FuelExhausted });
        }
        let name = fresh_name(&q);
        let RuleRef::Plain(k) = q.add_rule(&name, lhs, rhs).expect("oriented normal forms form a rule") else {
            unreachable!()
        };
        added.push(k);
        trace.push(TraceEntry { branching: b, first_nf: v, second_nf: w, outcome: TraceOutcome::Added(k) });
        let mut fresh: Vec<LocalBranching> =
            (0..=k).flat_map(|r| critical_branchings_between(&q, RuleRef::Plain(r), RuleRef::Plain(k))).collect();
        fresh.sort_by_key(sort_key);
        queue.extend(fresh);
    }
    Ok(CompletionResult { polygraph: q, added, trace, status: CompletionStatus::Completed })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReducedReport {
    pub violations: Vec<String>,
}

impl ReducedReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every lhs is irreducible by the other rules and every rhs by all rules.
pub fn is_reduced(p: &Polygraph) -> ReducedReport {
    let mut violations = Vec::new();
    for r in p.rule_refs(0) {
        let lhs = p.lhs(r);
        let bound = lhs.len() as u32;
        if let Some(x) = find_redexes(p, &lhs, bound).into_iter().find(|x| !(x.rule == r && x.position == 0)) {
            violations.push(format!("rule {}: lhs reducible by {} at {}", p.rule_name(r), p.rule_name(x.rule), x.position));
        }
        let rhs = p.rhs(r);
        if let Some(x) = find_redexes(p, &rhs, rhs.len() as u32).first() {
            violations.push(format!("rule {}: rhs reducible by {} at {}", p.rule_name(r), p.rule_name(x.rule), x.position));
        }
    }
    ReducedReport { violations }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub result: ConvergentPolygraph,
    /// The Tietze moves performed, each checked against its witness.
    pub moves: Vec<TietzeMove>,
}

/// Retarget rhs to normal forms, drop duplicates, drop rules with a reducible lhs.
pub fn metivier_squier_reduce(cp: &ConvergentPolygraph) -> Result<Reduction, CompletionError> {
    let mut q = cp.polygraph().clone();
    if !q.pumped_rules().is_empty() {
        return Err(CompletionError::PumpedUnsupported);
    }
    let limits = cp.limits();
    let mut moves = Vec::new();
    let apply = |q: &mut Polygraph, mv: TietzeMove, moves: &mut Vec<TietzeMove>| -> Result<(), CompletionError> {
        *q = tietze_apply(q, &mv)?;
        moves.push(mv);
        Ok(())
    };

    for i in 0..q.rules().len() {
        let rule = q.rules()[i].clone();
        let (nf, sigma) = normalize(&q, &rule.rhs, Strategy::Leftmost, limits)
            .map_err(|_| CompletionError::Fuel(q.show_word(&rule.rhs)))?;
        if sigma.is_empty() {
            continue;
        }
        let mut temp = format!("{}'", rule.name);
        while q.rule_name_taken(&temp) {
            temp.push('\'');
        }
        let old_step = RewriteStep::at(&q, &rule.lhs, RuleRef::Plain(i), 0);
        let witness = ZigZag::step(&q, old_step).then(sigma.as_zigzag());
        apply(&mut q, TietzeMove::AddRule { name: temp.clone(), lhs: rule.lhs.clone(), rhs: nf.clone(), witness }, &mut moves)?;
        let new_step = RewriteStep::at(&q, &rule.lhs, RuleRef::Plain(q.rules().len() - 1), 0);
        let back = sigma.as_zigzag().inverse(&q).expect("normalization path is valid");
        let witness = ZigZag::step(&q, new_step).then(&back);
        apply(&mut q, TietzeMove::RemoveRule { rule: rule.name.clone(), witness }, &mut moves)?;
        // Put the retargeted rule back in place under its old name.
        let mut r = q.rules.pop().unwrap();
        r.name = rule.name.clone();
        q.rules.insert(i, r);
    }

    let mut i = 0;
    while i < q.rules().len() {
        let dup = (0..i).find(|&j| q.rules()[j].lhs == q.rules()[i].lhs && q.rules()[j].rhs == q.rules()[i].rhs);
        match dup {
            Some(j) => {
                let name = q.rules()[i].name.clone();
                let witness = ZigZag::step(&q, RewriteStep::at(&q, &q.rules()[i].lhs, RuleRef::Plain(j), 0));
                apply(&mut q, TietzeMove::RemoveRule { rule: name, witness }, &mut moves)?;
            }
            None => i += 1,
        }
    }

    let mut i = 0;
    while i < q.rules().len() {
        let rule = q.rules()[i].clone();
        let others_match = find_redexes(&q, &rule.lhs, 0).iter().any(|x| x.rule != RuleRef::Plain(i));
        if !others_match {
            i += 1;
            continue;
        }
        let mut without = q.clone();
        without.rules.remove(i);
        let (nf, path) = normalize(&without, &rule.lhs, Strategy::Leftmost, limits)
            .map_err(|_| CompletionError::Fuel(q.show_word(&rule.lhs)))?;
        if nf != rule.rhs {
            return Err(CompletionError::NotDerivable(rule.name));
        }
        let steps = path
            .steps()
            .iter()
            .map(|s| {
                let mut s = s.clone();
                if let RuleRef::Plain(k) = s.rule {
                    if k >= i {
                        s.rule = RuleRef::Plain(k + 1);
                    }
                }
                s
            })
            .collect();
        let witness = ZigZag::new(rule.lhs.clone(), steps);
        apply(&mut q, TietzeMove::RemoveRule { rule: rule.name.clone(), witness }, &mut moves)?;
    }
    debug_assert!(is_reduced(&q).holds());
    Ok(Reduction { result: ConvergentPolygraph::trusted(q, limits, false, cp.sampled()), moves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::normal_form;

    fn deglex(p: &Polygraph, names: &[&str]) -> DeglexOrder {
        DeglexOrder::from_names(p, names).unwrap()
    }

    #[test]
    fn xyx_completes_with_one_rule() {
        let p = Polygraph::monoid_from(&["x", "y"], &[("alpha", "x y x", "y y")]).unwrap();
        let r = knuth_bendix(&p, &deglex(&p, &["x", "y"]), DEFAULT_MAX_RULES, Limits::default()).unwrap();
        assert_eq!(r.status, CompletionStatus::Completed);
        assert_eq!(r.added, vec![1]);
        assert_eq!(r.polygraph.show_rule(RuleRef::Plain(1)), "beta: y y y x => x y y y");
        assert!(ConvergentPolygraph::certify_deglex(r.polygraph.clone(), Limits::default()).is_ok());
        let again = knuth_bendix(&p, &deglex(&p, &["x", "y"]), DEFAULT_MAX_RULES, Limits::default()).unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn convergent_input_is_unchanged() {
        let p = Polygraph::monoid_from(
            &["s", "t", "a"],
            &[("alpha", "t a", "a s"), ("beta", "s t", "a"), ("gamma", "s a s", "a a"), ("delta", "s a a", "a a t")],
        )
        .unwrap();
        let r = knuth_bendix(&p, &deglex(&p, &["a", "s", "t"]), DEFAULT_MAX_RULES, Limits::default()).unwrap();
        assert_eq!(r.status, CompletionStatus::Completed);
        assert!(r.added.is_empty());
        assert_eq!(r.polygraph, p);
    }

    #[test]
    fn lp_diverges() {
        let p = Polygraph::monoid_from(
            &["a", "b", "c", "d", "d'"],
            &[("alpha", "a b", "a"), ("beta", "d a", "a c"), ("gamma", "d' a", "a c")],
        )
        .unwrap();
        let r = knuth_bendix(&p, &deglex(&p, &["a", "b", "c", "d", "d'"]), 6, Limits::default()).unwrap();
        assert_eq!(r.status, CompletionStatus::FuelExhausted);
        let added: Vec<String> = r.added.iter().map(|&k| r.polygraph.show_rule(RuleRef::Plain(k))).collect();
        assert_eq!(added, vec!["delta: a c b => a c", "epsilon: a c c b => a c c", "zeta: a c c c b => a c c c"]);
    }

    #[test]
    fn completion_rejects_non_terminating_order() {
        let p = Polygraph::monoid_from(&["x", "y"], &[("alpha", "y y", "x y x")]).unwrap();
        assert!(matches!(
            knuth_bendix(&p, &deglex(&p, &["x", "y"]), 8, Limits::default()),
            Err(CompletionError::NotTerminating { .. })
        ));
    }

    #[test]
    fn reducedness() {
        let p = Polygraph::monoid_from(&["a"], &[("mu", "a a", "a"), ("nu", "a a a", "a")]).unwrap();
        let rep = is_reduced(&p);
        assert!(!rep.holds());
        assert_eq!(rep.violations, vec!["rule nu: lhs reducible by mu at 0"]);
        assert!(is_reduced(&Polygraph::monoid_from(&["a"], &[]).unwrap()).holds());
    }

    #[test]
    fn reduce_drops_contained_lhs() {
        let p = Polygraph::monoid_from(&["a"], &[("mu", "a a", "a"), ("nu", "a a a", "a")]).unwrap();
        let cp = ConvergentPolygraph::certify_deglex(p.clone(), Limits::default()).unwrap();
        let red = metivier_squier_reduce(&cp).unwrap();
        assert_eq!(red.result.polygraph().rules().len(), 1);
        assert_eq!(red.result.polygraph().show_rule(RuleRef::Plain(0)), "mu: a a => a");
        assert_eq!(red.moves.len(), 1);
    }

    #[test]
    fn reduce_keeps_first_duplicate_and_retargets() {
        let mut p2 = Polygraph::monoid_from(&["a", "b"], &[("mu", "a a", "a"), ("mu'", "a a", "a"), ("nu", "b a", "a a")]).unwrap();
        p2.set_order(&["a", "b"]).unwrap();
        let cp = ConvergentPolygraph::certify_deglex(p2.clone(), Limits::default()).unwrap();
        let red = metivier_squier_reduce(&cp).unwrap();
        let q = red.result.polygraph();
        let shown: Vec<String> = (0..q.rules().len()).map(|i| q.show_rule(RuleRef::Plain(i))).collect();
        assert_eq!(shown, vec!["mu: a a => a", "nu: b a => a"]);
        assert!(is_reduced(q).holds());
        for w in ["b a b a", "a b b a", "b a a b"] {
            let u = p2.parse_word(w).unwrap();
            assert_eq!(normal_form(&p2, &u, Limits::default()).unwrap(), normal_form(q, &u, Limits::default()).unwrap());
        }
    }

    #[test]
    fn reduced_input_is_unchanged() {
        let p = Polygraph::monoid_from(&["x", "y"], &[("alpha", "x y x", "y y"), ("beta", "y y y x", "x y y y")]).unwrap();
        let cp = ConvergentPolygraph::certify_deglex(p.clone(), Limits::default()).unwrap();
        let red = metivier_squier_reduce(&cp).unwrap();
        assert_eq!(red.result.polygraph(), &p);
        assert!(red.moves.is_empty());
    }
}
