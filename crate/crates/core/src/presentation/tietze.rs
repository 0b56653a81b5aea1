use thiserror::Error;

use super::{GenId, Polygraph, PresentationError, RuleRef, Word};
use crate::rewrite::{PathError, ZigZag};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TietzeMove {
    /// New generator `name` with rule `rule: word ⇒ name`.
    AddGen { name: String, word: Word, rule: String },
    /// Remove `generator` using `rule: u ⇒ generator`, substituting `u` everywhere.
    RemoveGen { generator: String, rule: String },
    AddRule { name: String, lhs: Word, rhs: Word, witness: ZigZag },
    RemoveRule { rule: String, witness: ZigZag },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TietzeError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("witness: {0}")]
    Path(#[from] PathError),
    #[error("witness does not start at the expected word")]
    WrongSource,
    #[error("witness does not end at the expected word")]
    WrongTarget,
    #[error("witness uses removed rule")]
    UsesRemovedRule,
    #[error("generator {0} occurs in the word it stands for")]
    SelfReference(String),
    #[error("rule {0} does not have the removed generator as its whole rhs")]
    NotADefinition(String),
    #[error("{0}")]
    Dangling(String),
}

fn check_witness(p: &Polygraph, witness: &ZigZag, from: &Word, to: &Word) -> Result<(), TietzeError> {
    if witness.source() != from {
        return Err(TietzeError::WrongSource);
    }
    if witness.target(p)? != *to {
        return Err(TietzeError::WrongTarget);
    }
    Ok(())
}

fn forbid_three_cells(p: &Polygraph) -> Result<(), TietzeError> {
    if p.three_cells.is_empty() {
        Ok(())
    } else {
        Err(TietzeError::Dangling("3-cells would lose their boundaries".into()))
    }
}

/// Apply one elementary Tietze transformation, checking its witness.
pub fn tietze_apply(p: &Polygraph, mv: &TietzeMove) -> Result<Polygraph, TietzeError> {
    let mut q = p.clone();
    match mv {
        TietzeMove::AddGen { name, word, rule } => {
            if word.is_identity() {
                return Err(PresentationError::IdentityLhs(rule.clone()).into());
            }
            let g = q.push_generator(name, word.source(), word.target())?;
            let rhs = q.word(&[g], word.source())?;
            q.add_rule(rule, word.clone(), rhs)?;
        }
        TietzeMove::RemoveGen { generator, rule } => {
            forbid_three_cells(p)?;
            let x = p.generator_id(generator).ok_or_else(|| PresentationError::UnknownGenerator(generator.clone()))?;
            let Some(RuleRef::Plain(ri)) = p.rule_ref(rule) else {
                return Err(PresentationError::UnknownRule(rule.clone()).into());
            };
            let def = &p.rules[ri];
            if def.rhs.letters() != [x] {
                return Err(TietzeError::NotADefinition(rule.clone()));
            }
            if def.lhs.contains_letter(x) {
                return Err(TietzeError::SelfReference(generator.clone()));
            }
            if p.pumped.iter().any(|r| r.pump == x) {
                return Err(TietzeError::Dangling(format!("{generator} is a pump letter")));
            }
            q = remove_generator(p, x, ri)?;
        }
        TietzeMove::AddRule { name, lhs, rhs, witness } => {
            check_witness(p, witness, lhs, rhs)?;
            q.add_rule(name, lhs.clone(), rhs.clone())?;
        }
        TietzeMove::RemoveRule { rule, witness } => {
            forbid_three_cells(p)?;
            let Some(RuleRef::Plain(ri)) = p.rule_ref(rule) else {
                return Err(PresentationError::UnknownRule(rule.clone()).into());
            };
            if witness.rules_used().any(|r| r == RuleRef::Plain(ri)) {
                return Err(TietzeError::UsesRemovedRule);
            }
            check_witness(p, witness, &p.rules[ri].lhs, &p.rules[ri].rhs)?;
            q.rules.remove(ri);
        }
    }
    debug_assert!(q.validate().is_empty());
    Ok(q)
}

fn remove_generator(p: &Polygraph, x: GenId, def_rule: usize) -> Result<Polygraph, TietzeError> {
    let image = p.rules[def_rule].lhs.clone();
    let shift = |g: GenId| if g > x { g - 1 } else { g };
    let mut q = p.clone();
    q.generators.remove(x);
    q.order = p.order.as_ref().map(|o| o.iter().filter(|&&g| g != x).map(|&g| shift(g)).collect());
    let subst = |w: &Word| -> Result<Word, PresentationError> {
        let mut letters = Vec::new();
        for &g in w.letters() {
            if g == x {
                letters.extend(image.letters().iter().map(|&h| shift(h)));
            } else {
                letters.push(shift(g));
            }
        }
        q.word(&letters, w.source())
    };
    let mut rules = Vec::new();
    for (i, r) in p.rules.iter().enumerate() {
        if i == def_rule {
            continue;
        }
        let mut r = r.clone();
        r.lhs = subst(&r.lhs)?;
        r.rhs = subst(&r.rhs)?;
        rules.push(r);
    }
    let mut pumped = Vec::new();
    for r in &p.pumped {
        let mut r = r.clone();
        r.lhs_prefix = subst(&r.lhs_prefix)?;
        r.lhs_suffix = subst(&r.lhs_suffix)?;
        r.rhs_prefix = subst(&r.rhs_prefix)?;
        r.rhs_suffix = subst(&r.rhs_suffix)?;
        r.pump = shift(r.pump);
        pumped.push(r);
    }
    q.rules = rules;
    q.pumped = pumped;
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::RewriteStep;

    fn braid() -> Polygraph {
        Polygraph::monoid_from(&["s", "t"], &[("r", "s t s", "t s t")]).unwrap()
    }

    #[test]
    fn add_gen_for_st() {
        let p = braid();
        let st = p.parse_word("s t").unwrap();
        let q = tietze_apply(&p, &TietzeMove::AddGen { name: "a".into(), word: st, rule: "beta".into() }).unwrap();
        assert_eq!(q.generators().len(), 3);
        assert_eq!(q.show_rule(RuleRef::Plain(1)), "beta: s t => a");
        let back = tietze_apply(&q, &TietzeMove::RemoveGen { generator: "a".into(), rule: "beta".into() }).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn remove_gen_substitutes() {
        let p = Polygraph::monoid_from(&["s", "t", "a"], &[("alpha", "t a", "a s"), ("beta", "s t", "a")]).unwrap();
        let q = tietze_apply(&p, &TietzeMove::RemoveGen { generator: "a".into(), rule: "beta".into() }).unwrap();
        assert_eq!(q.show_rule(RuleRef::Plain(0)), "alpha: t s t => s t s");
    }

    #[test]
    fn remove_gen_rejects_self_reference() {
        let p = Polygraph::monoid_from(&["a", "b"], &[("r", "a b", "b")]).unwrap();
        let err = tietze_apply(&p, &TietzeMove::RemoveGen { generator: "b".into(), rule: "r".into() }).unwrap_err();
        assert_eq!(err, TietzeError::SelfReference("b".into()));
    }

    #[test]
    fn add_trivial_rule() {
        let p = braid();
        let u = p.parse_word("s").unwrap();
        let mv = TietzeMove::AddRule { name: "triv".into(), lhs: u.clone(), rhs: u.clone(), witness: ZigZag::identity(u) };
        let q = tietze_apply(&p, &mv).unwrap();
        assert_eq!(q.rules().len(), 2);
    }

    #[test]
    fn remove_rule_witness_checks() {
        let mut p = Polygraph::monoid_from(&["a"], &[("mu", "a a", "a")]).unwrap();
        let aaa = p.parse_word("a a a").unwrap();
        let a = p.parse_word("a").unwrap();
        p.add_rule("nu", aaa.clone(), a.clone()).unwrap();
        let uses = ZigZag::step(&p, RewriteStep::at(&p, &aaa, RuleRef::Plain(1), 0));
        let err = tietze_apply(&p, &TietzeMove::RemoveRule { rule: "nu".into(), witness: uses }).unwrap_err();
        assert_eq!(err.to_string(), "witness uses removed rule");
        let mut w = ZigZag::step(&p, RewriteStep::at(&p, &aaa, RuleRef::Plain(0), 0));
        w.push(RewriteStep::at(&p, &p.parse_word("a a").unwrap(), RuleRef::Plain(0), 0));
        let q = tietze_apply(&p, &TietzeMove::RemoveRule { rule: "nu".into(), witness: w }).unwrap();
        assert_eq!(q.rules().len(), 1);
        let bad = ZigZag::identity(aaa);
        assert_eq!(
            tietze_apply(&p, &TietzeMove::RemoveRule { rule: "nu".into(), witness: bad }),
            Err(TietzeError::WrongTarget)
        );
    }
}
