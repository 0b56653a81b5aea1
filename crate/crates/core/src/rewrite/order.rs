use std::cmp::Ordering;

use thiserror::Error;

use crate::presentation::{GenId, Polygraph, RuleRef, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("generator #{0} is missing from the order")]
    Missing(GenId),
    #[error("unknown generator `{0}`")]
    Unknown(String),
}

/// Deglex: length first, then letterwise by a generator ranking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeglexOrder {
    rank: Vec<Option<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `u ⇒ v`
    LeftToRight,
    /// `v ⇒ u`
    RightToLeft,
    Unorientable,
}

impl DeglexOrder {
    /// The polygraph's `order:` clause, or declaration order.
    pub fn of(p: &Polygraph) -> DeglexOrder {
        let ids: Vec<GenId> = match p.order() {
            Some(o) => o.to_vec(),
            None => (0..p.generators().len()).collect(),
        };
        DeglexOrder::from_ids(p.generators().len(), &ids)
    }

    /// Ranking from ids, smallest first; unlisted generators stay unranked.
    pub fn from_ids(num_generators: usize, ids: &[GenId]) -> DeglexOrder {
        let mut rank = vec![None; num_generators];
        for (r, &g) in ids.iter().enumerate() {
            if g >= rank.len() {
                rank.resize(g + 1, None);
            }
            rank[g] = Some(r);
        }
        DeglexOrder { rank }
    }

    pub fn from_names<S: AsRef<str>>(p: &Polygraph, names: &[S]) -> Result<DeglexOrder, OrderError> {
        let mut ids = Vec::new();
        for n in names {
            let n = n.as_ref();
            ids.push(p.generator_id(n).ok_or_else(|| OrderError::Unknown(n.into()))?);
        }
        Ok(DeglexOrder::from_ids(p.generators().len(), &ids))
    }

    fn rank(&self, g: GenId) -> Result<usize, OrderError> {
        self.rank.get(g).copied().flatten().ok_or(OrderError::Missing(g))
    }

    pub fn compare(&self, u: &Word, v: &Word) -> Result<Ordering, OrderError> {
        for &g in u.letters().iter().chain(v.letters()) {
            self.rank(g)?;
        }
        match u.len().cmp(&v.len()) {
            Ordering::Equal => {}
            o => return Ok(o),
        }
        for (&a, &b) in u.letters().iter().zip(v.letters()) {
            match self.rank(a)?.cmp(&self.rank(b)?) {
                Ordering::Equal => continue,
                o => return Ok(o),
            }
        }
        Ok(Ordering::Equal)
    }

    pub fn orient(&self, u: &Word, v: &Word) -> Result<Orientation, OrderError> {
        Ok(match self.compare(u, v)? {
            Ordering::Greater => Orientation::LeftToRight,
            Ordering::Less => Orientation::RightToLeft,
            Ordering::Equal => Orientation::Unorientable,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleVerdict {
    pub rule: String,
    pub holds: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminationReport {
    pub rules: Vec<RuleVerdict>,
}

impl TerminationReport {
    pub fn holds(&self) -> bool {
        self.rules.iter().all(|r| r.holds)
    }

    pub fn first_failure(&self) -> Option<&RuleVerdict> {
        self.rules.iter().find(|r| !r.holds)
    }
}

/// `lhs > rhs` for every rule; pumped families are checked for `n ≤ pump_bound`
/// and beyond by length arithmetic.
pub fn check_deglex_termination(p: &Polygraph, order: &DeglexOrder, pump_bound: u32) -> TerminationReport {
    let mut rules = Vec::new();
    for (i, r) in p.rules().iter().enumerate() {
        let verdict = match order.compare(&r.lhs, &r.rhs) {
            Ok(Ordering::Greater) => RuleVerdict { rule: r.name.clone(), holds: true, note: "lhs > rhs".into() },
            Ok(_) => RuleVerdict { rule: r.name.clone(), holds: false, note: "lhs <= rhs".into() },
            Err(e) => RuleVerdict { rule: r.name.clone(), holds: false, note: e.to_string() },
        };
        debug_assert_eq!(p.rule_name(RuleRef::Plain(i)), verdict.rule);
        rules.push(verdict);
    }
    for (family, r) in p.pumped_rules().iter().enumerate() {
        let mut failure = None;
        for n in 0..=pump_bound {
            let rr = RuleRef::Pumped { family, n };
            match order.compare(&p.lhs(rr), &p.rhs(rr)) {
                Ok(Ordering::Greater) => {}
                Ok(_) => {
                    failure = Some(format!("fails at n = {n}"));
                    break;
                }
                Err(e) => {
                    failure = Some(e.to_string());
                    break;
                }
            }
        }
        let fixed_l = (r.lhs_prefix.len() + r.lhs_suffix.len()) as i64;
        let fixed_r = (r.rhs_prefix.len() + r.rhs_suffix.len()) as i64 + r.q as i64;
        let n = pump_bound as i64 + 1;
        let tail = if r.p == 0 {
            // lhs grows with n, rhs does not: strict from n on if strict at n.
            fixed_l + n > fixed_r
        } else {
            fixed_l > fixed_r
        };
        let verdict = match failure {
            Some(note) => RuleVerdict { rule: r.stem.clone(), holds: false, note },
            None if tail => RuleVerdict {
                rule: r.stem.clone(),
                holds: true,
                note: format!("checked n <= {pump_bound}; longer lhs beyond"),
            },
            None => RuleVerdict {
                rule: r.stem.clone(),
                holds: false,
                note: format!("checked n <= {pump_bound}; lengths do not settle beyond"),
            },
        };
        rules.push(verdict);
    }
    TerminationReport { rules }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b3() -> Polygraph {
        let mut p = Polygraph::monoid_from(
            &["s", "t", "a"],
            &[("alpha", "t a", "a s"), ("beta", "s t", "a"), ("gamma", "s a s", "a a"), ("delta", "s a a", "a a t")],
        )
        .unwrap();
        p.set_order(&["a", "s", "t"]).unwrap();
        p
    }

    #[test]
    fn compare_examples() {
        let p = b3();
        let o = DeglexOrder::of(&p);
        let w = |s: &str| p.parse_word(s).unwrap();
        assert_eq!(o.compare(&w("t a"), &w("a s")), Ok(Ordering::Greater));
        assert_eq!(o.compare(&w("s t"), &w("a")), Ok(Ordering::Greater));
        assert_eq!(o.compare(&w("a"), &w("a")), Ok(Ordering::Equal));
        let x = Polygraph::monoid_from(&["x", "y"], &[]).unwrap();
        let ox = DeglexOrder::of(&x);
        let wx = |s: &str| x.parse_word(s).unwrap();
        assert_eq!(ox.compare(&wx("y y y x"), &wx("x y y y")), Ok(Ordering::Greater));
        assert_eq!(ox.orient(&wx("y y y x"), &wx("x y y y")), Ok(Orientation::LeftToRight));
        assert_eq!(ox.orient(&wx("x"), &wx("x")), Ok(Orientation::Unorientable));
    }

    #[test]
    fn missing_generator() {
        let p = b3();
        let o = DeglexOrder::from_names(&p, &["a", "s"]).unwrap();
        let w = p.parse_word("t").unwrap();
        assert_eq!(o.compare(&w, &w), Err(OrderError::Missing(1)));
    }

    #[test]
    fn sq_beta_is_not_deglex_orientable() {
        let p = Polygraph::monoid_from(&["a", "t", "x"], &[]).unwrap();
        for perm in [["a", "t", "x"], ["x", "t", "a"], ["t", "x", "a"]] {
            let o = DeglexOrder::from_names(&p, &perm).unwrap();
            let l = p.parse_word("a t x").unwrap();
            let r = p.parse_word("x a").unwrap();
            assert_eq!(o.orient(&l, &r), Ok(Orientation::LeftToRight));
        }
    }

    #[test]
    fn termination_checks() {
        let p = b3();
        assert!(check_deglex_termination(&p, &DeglexOrder::of(&p), 0).holds());
        let x = Polygraph::monoid_from(&["x", "y"], &[("alpha", "x y x", "y y")]).unwrap();
        assert!(check_deglex_termination(&x, &DeglexOrder::of(&x), 0).holds());
        let sq = Polygraph::monoid_from(&["a", "t", "x"], &[("beta", "x a", "a t x")]).unwrap();
        let rep = check_deglex_termination(&sq, &DeglexOrder::of(&sq), 0);
        assert!(!rep.holds());
        assert_eq!(rep.first_failure().unwrap().rule, "beta");
    }
}
