use thiserror::Error;

use super::{RewriteStep, TwoCellPath};
use crate::presentation::{Polygraph, RuleRef, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Step budget and pumped-instance bound shared by every rewriting routine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub fuel: u64,
    pub pump_bound: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { fuel: 1_000_000, pump_bound: 8 }
    }
}

impl Limits {
    pub fn with_pump_bound(pump_bound: u32) -> Limits {
        Limits { pump_bound, ..Limits::default() }
    }

    /// Instances longer than `w` cannot match, so this bound is exact on `w`.
    pub fn bound_for(&self, w: &Word) -> u32 {
        self.pump_bound.max(w.len() as u32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Redex {
    pub position: usize,
    pub rule: RuleRef,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("fuel exhausted after {} steps", partial.len())]
    FuelExhausted { partial: TwoCellPath },
    #[error("rule does not match at position {0}")]
    NoMatch(usize),
}

/// Redexes starting at `i`, in rule declaration order.
pub fn redexes_at(p: &Polygraph, w: &Word, i: usize, pump_bound: u32, out: &mut Vec<Redex>) {
    for (k, r) in p.rules().iter().enumerate() {
        if !r.lhs.is_identity() && w.occurs_at(&r.lhs, i) {
            out.push(Redex { position: i, rule: RuleRef::Plain(k) });
        }
    }
    let letters = w.letters();
    for (family, r) in p.pumped_rules().iter().enumerate() {
        if !w.occurs_at(&r.lhs_prefix, i) {
            continue;
        }
        let start = i + r.lhs_prefix.len();
        let mut n = 0u32;
        loop {
            let at = start + n as usize;
            if n > pump_bound || at + r.lhs_suffix.len() > w.len() {
                break;
            }
            if w.occurs_at(&r.lhs_suffix, at) && !(r.lhs_prefix.is_empty() && r.lhs_suffix.is_empty() && n == 0) {
                out.push(Redex { position: i, rule: RuleRef::Pumped { family, n } });
            }
            if at >= letters.len() || letters[at] != r.pump {
                break;
            }
            n += 1;
        }
    }
}

/// All redexes of `w`, by position then rule declaration order.
pub fn find_redexes(p: &Polygraph, w: &Word, pump_bound: u32) -> Vec<Redex> {
    let mut out = Vec::new();
    for i in 0..w.len() {
        redexes_at(p, w, i, pump_bound, &mut out);
    }
    out
}

pub fn apply_step(p: &Polygraph, w: &Word, rule: RuleRef, position: usize) -> Result<Word, RewriteError> {
    if !p.has_rule(rule) {
        return Err(RewriteError::NoMatch(position));
    }
    let lhs = p.lhs(rule);
    if lhs.is_identity() || !w.occurs_at(&lhs, position) {
        return Err(RewriteError::NoMatch(position));
    }
    Ok(w.splice(position, lhs.len(), &p.rhs(rule)))
}

fn choose(p: &Polygraph, w: &Word, strategy: Strategy, bound: u32) -> Option<Redex> {
    let mut buf = Vec::new();
    let n = w.len();
    for k in 0..n {
        let i = match strategy {
            Strategy::Leftmost => k,
            Strategy::Rightmost => n - 1 - k,
        };
        redexes_at(p, w, i, bound, &mut buf);
        if let Some(&r) = buf.first() {
            return Some(r);
        }
    }
    None
}

/// Rewrite to a normal form, always reducing the leftmost (or rightmost) redex.
pub fn normalize(p: &Polygraph, w: &Word, strategy: Strategy, limits: Limits) -> Result<(Word, TwoCellPath), RewriteError> {
    let mut cur = w.clone();
    let mut path = TwoCellPath::identity(w.clone());
    let mut used = 0u64;
    while let Some(r) = choose(p, &cur, strategy, limits.bound_for(&cur)) {
        if used >= limits.fuel {
            return Err(RewriteError::FuelExhausted { partial: path });
        }
        let step = RewriteStep::at(p, &cur, r.rule, r.position);
        cur = step.reduct_word(p);
        path.push(step);
        used += 1;
    }
    Ok((cur, path))
}

/// Leftmost normal form only.
pub fn normal_form(p: &Polygraph, w: &Word, limits: Limits) -> Result<Word, RewriteError> {
    normalize(p, w, Strategy::Leftmost, limits).map(|(w, _)| w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::PumpedRule;
    use std::collections::{BTreeSet, VecDeque};

    fn b3() -> Polygraph {
        Polygraph::monoid_from(
            &["s", "t", "a"],
            &[("alpha", "t a", "a s"), ("beta", "s t", "a"), ("gamma", "s a s", "a a"), ("delta", "s a a", "a a t")],
        )
        .unwrap()
    }

    fn sq_alpha() -> Polygraph {
        let mut p = Polygraph::monoid_from(&["a", "b", "t"], &[]).unwrap();
        let rule = PumpedRule {
            stem: "alpha".into(),
            lhs_prefix: p.parse_word("a").unwrap(),
            lhs_suffix: p.parse_word("b").unwrap(),
            rhs_prefix: Word::identity(0),
            rhs_suffix: Word::identity(0),
            pump: 2,
            p: 0,
            q: 0,
        };
        p.add_pumped_rule(rule).unwrap();
        p
    }

    /// Oracle: every irreducible word reachable from `w`.
    fn reachable_normal_forms(p: &Polygraph, w: &Word) -> BTreeSet<Word> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([w.clone()]);
        let mut out = BTreeSet::new();
        while let Some(u) = queue.pop_front() {
            if !seen.insert(u.clone()) {
                continue;
            }
            let rs = find_redexes(p, &u, u.len() as u32);
            if rs.is_empty() {
                out.insert(u.clone());
            }
            for r in rs {
                queue.push_back(apply_step(p, &u, r.rule, r.position).unwrap());
            }
        }
        out
    }

    #[test]
    fn redexes_of_sta() {
        let p = b3();
        let w = p.parse_word("s t a").unwrap();
        let r = find_redexes(&p, &w, 0);
        assert_eq!(
            r,
            vec![Redex { position: 0, rule: RuleRef::Plain(1) }, Redex { position: 1, rule: RuleRef::Plain(0) }]
        );
        assert!(find_redexes(&p, &Word::identity(0), 0).is_empty());
    }

    #[test]
    fn pumped_redex() {
        let p = sq_alpha();
        let w = p.parse_word("a t t b").unwrap();
        let r = find_redexes(&p, &w, 2);
        assert_eq!(r, vec![Redex { position: 0, rule: RuleRef::Pumped { family: 0, n: 2 } }]);
        assert!(find_redexes(&p, &w, 1).is_empty());
    }

    #[test]
    fn apply_examples() {
        let p = b3();
        let w = p.parse_word("s t a").unwrap();
        assert_eq!(p.show_word(&apply_step(&p, &w, RuleRef::Plain(1), 0).unwrap()), "a a");
        let x = Polygraph::monoid_from(&["x", "y"], &[("alpha", "x y x", "y y")]).unwrap();
        let w = x.parse_word("x y x").unwrap();
        assert_eq!(x.show_word(&apply_step(&x, &w, RuleRef::Plain(0), 0).unwrap()), "y y");
        let a = x.parse_word("x").unwrap();
        assert_eq!(apply_step(&x, &a, RuleRef::Plain(0), 0), Err(RewriteError::NoMatch(0)));
    }

    #[test]
    fn normalize_examples() {
        let p = b3();
        let l = Limits::default();
        let (nf, path) = normalize(&p, &p.parse_word("s t s").unwrap(), Strategy::Leftmost, l).unwrap();
        assert_eq!(p.show_word(&nf), "a s");
        assert_eq!(path.len(), 1);
        let (nf, path) = normalize(&p, &p.parse_word("t s t").unwrap(), Strategy::Leftmost, l).unwrap();
        assert_eq!(p.show_word(&nf), "a s");
        assert_eq!(path.len(), 2);
        assert_eq!(path.steps()[0].position(), 1);
        let w = p.parse_word("a s").unwrap();
        let (nf, path) = normalize(&p, &w, Strategy::Leftmost, l).unwrap();
        assert_eq!(nf, w);
        assert!(path.is_empty());
    }

    #[test]
    fn normalization_agrees_with_exhaustive_oracle() {
        let p = b3();
        for text in ["s t s", "t s t", "s t a", "t t s a s", "s s t t", "a t s t a"] {
            let w = p.parse_word(text).unwrap();
            let oracle = reachable_normal_forms(&p, &w);
            assert_eq!(oracle.len(), 1, "{text}");
            let (nf, path) = normalize(&p, &w, Strategy::Rightmost, Limits::default()).unwrap();
            assert_eq!(Some(&nf), oracle.iter().next());
            assert_eq!(path.target(&p).unwrap(), nf);
        }
    }

    #[test]
    fn fuel_exhaustion_returns_partial_trace() {
        let p = Polygraph::monoid_from(&["a"], &[("loop", "a", "a")]).unwrap();
        let w = p.parse_word("a").unwrap();
        let err = normalize(&p, &w, Strategy::Leftmost, Limits { fuel: 5, pump_bound: 0 }).unwrap_err();
        match err {
            RewriteError::FuelExhausted { partial } => assert_eq!(partial.len(), 5),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn pump_bound_grows_with_word() {
        let p = sq_alpha();
        let w = p.parse_word("a a t t t t b b").unwrap();
        let (nf, path) = normalize(&p, &w, Strategy::Leftmost, Limits::with_pump_bound(0)).unwrap();
        assert_eq!(p.show_word(&nf), "1");
        assert_eq!(path.steps()[0].rule, RuleRef::Pumped { family: 0, n: 4 });
    }
}
