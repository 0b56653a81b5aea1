use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::presentation::{Polygraph, Word};
use crate::rewrite::{show_step, show_zigzag, PathError, RewriteStep, ZigZag};

/// A composite of generating 3-cells in the free (3,1)-category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ThreeCellExpr {
    /// A generating 3-cell, by index into `three_cells()`.
    Gen(usize),
    Inv(Box<ThreeCellExpr>),
    Whisker { left: Word, inner: Box<ThreeCellExpr>, right: Word },
    /// `pre ⋆₁ inner ⋆₁ post`
    Comp1 { pre: ZigZag, inner: Box<ThreeCellExpr>, post: ZigZag },
    /// `first ⋆₂ second`
    Comp2(Box<ThreeCellExpr>, Box<ThreeCellExpr>),
    Id2(ZigZag),
    /// The exchange identity between two disjoint steps on `word`:
    /// `first ⋆₁ second' ⇛ second ⋆₁ first'`, where primes are the steps carried across.
    Exchange { word: Word, first: RewriteStep, second: RewriteStep },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("at {path}: {msg}")]
pub struct ExprError {
    pub path: String,
    pub msg: String,
}

fn err(path: &str, msg: impl Into<String>) -> ExprError {
    ExprError { path: if path.is_empty() { "root".into() } else { path.into() }, msg: msg.into() }
}

/// `g` moved across the disjoint step `f`, as a step on `t(f)`.
pub fn carry_across(p: &Polygraph, f: &RewriteStep, g: &RewriteStep) -> RewriteStep {
    let (f0, f1) = f.span(p);
    let pos = g.position();
    let moved = if pos >= f1 { pos + p.rhs(f.rule).len() - (f1 - f0) } else { pos };
    RewriteStep::at(p, &f.reduct_word(p), g.rule, moved)
}

fn disjoint(p: &Polygraph, f: &RewriteStep, g: &RewriteStep) -> bool {
    let (a0, a1) = f.span(p);
    let (b0, b1) = g.span(p);
    a1 <= b0 || b1 <= a0
}

impl ThreeCellExpr {
    pub fn inv(self) -> ThreeCellExpr {
        match self {
            ThreeCellExpr::Inv(e) => *e,
            e @ ThreeCellExpr::Id2(_) => e,
            e => ThreeCellExpr::Inv(Box::new(e)),
        }
    }

    pub fn whisker(self, left: Word, right: Word) -> ThreeCellExpr {
        if left.is_identity() && right.is_identity() {
            return self;
        }
        ThreeCellExpr::Whisker { left, inner: Box::new(self), right }
    }

    pub fn comp1(pre: ZigZag, inner: ThreeCellExpr, post: ZigZag) -> ThreeCellExpr {
        if pre.is_identity() && post.is_identity() {
            return inner;
        }
        ThreeCellExpr::Comp1 { pre, inner: Box::new(inner), post }
    }

    pub fn comp2(self, other: ThreeCellExpr) -> ThreeCellExpr {
        match (self, other) {
            (ThreeCellExpr::Id2(_), e) => e,
            (e, ThreeCellExpr::Id2(_)) => e,
            (a, b) => ThreeCellExpr::Comp2(Box::new(a), Box::new(b)),
        }
    }

    /// Generating 3-cells occurring anywhere in the expression.
    pub fn generators(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<usize>) {
        match self {
            ThreeCellExpr::Gen(i) => {
                out.insert(*i);
            }
            ThreeCellExpr::Inv(e) | ThreeCellExpr::Whisker { inner: e, .. } | ThreeCellExpr::Comp1 { inner: e, .. } => {
                e.collect(out)
            }
            ThreeCellExpr::Comp2(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            ThreeCellExpr::Id2(_) | ThreeCellExpr::Exchange { .. } => {}
        }
    }

    pub fn display<'a>(&'a self, p: &'a Polygraph) -> ExprDisplay<'a> {
        ExprDisplay { expr: self, p }
    }
}

/// Source and target 2-cells, reduced (adjacent inverse steps cancelled).
pub fn boundary3(p: &Polygraph, e: &ThreeCellExpr) -> Result<(ZigZag, ZigZag), ExprError> {
    walk(p, e, "")
}

fn check(p: &Polygraph, z: &ZigZag, path: &str) -> Result<Word, ExprError> {
    z.target(p).map_err(|e: PathError| err(path, e.to_string()))
}

fn walk(p: &Polygraph, e: &ThreeCellExpr, path: &str) -> Result<(ZigZag, ZigZag), ExprError> {
    match e {
        ThreeCellExpr::Gen(i) => {
            let c = p.three_cells().get(*i).ok_or_else(|| err(path, format!("no 3-cell #{i}")))?;
            Ok((c.source.reduced(), c.target.reduced()))
        }
        ThreeCellExpr::Inv(inner) => {
            let (s, t) = walk(p, inner, &format!("{path}/inv"))?;
            Ok((t, s))
        }
        ThreeCellExpr::Whisker { left, inner, right } => {
            let (s, t) = walk(p, inner, &format!("{path}/whisker"))?;
            if left.target() != s.source().source() || s.source().target() != right.source() {
                return Err(err(path, "whiskering words do not compose"));
            }
            Ok((s.whisker(left, right), t.whisker(left, right)))
        }
        ThreeCellExpr::Comp1 { pre, inner, post } => {
            let (s, t) = walk(p, inner, &format!("{path}/comp1"))?;
            let pre_t = check(p, pre, path)?;
            if &pre_t != s.source() {
                return Err(err(path, "pre-composed 2-cell does not end at the inner source"));
            }
            let inner_t = check(p, &s, path)?;
            if &inner_t != post.source() {
                return Err(err(path, "post-composed 2-cell does not start at the inner target"));
            }
            check(p, post, path)?;
            Ok((pre.then(&s).then(post).reduced(), pre.then(&t).then(post).reduced()))
        }
        ThreeCellExpr::Comp2(a, b) => {
            let (sa, ta) = walk(p, a, &format!("{path}/comp2.0"))?;
            let (sb, tb) = walk(p, b, &format!("{path}/comp2.1"))?;
            if !ta.equivalent(&sb) {
                return Err(err(path, "target of the first operand is not the source of the second"));
            }
            Ok((sa, tb))
        }
        ThreeCellExpr::Id2(z) => {
            check(p, z, path)?;
            let z = z.reduced();
            Ok((z.clone(), z))
        }
        ThreeCellExpr::Exchange { word, first, second } => {
            if !first.is_forward() || !second.is_forward() {
                return Err(err(path, "exchange of a backward step"));
            }
            if &first.redex_word(p) != word || &second.redex_word(p) != word {
                return Err(err(path, "exchanged steps do not rewrite the given word"));
            }
            if !disjoint(p, first, second) {
                return Err(err(path, "exchanged steps overlap"));
            }
            let s = ZigZag::new(word.clone(), vec![first.clone(), carry_across(p, first, second)]);
            let t = ZigZag::new(word.clone(), vec![second.clone(), carry_across(p, second, first)]);
            Ok((s, t))
        }
    }
}

pub struct ExprDisplay<'a> {
    expr: &'a ThreeCellExpr,
    p: &'a Polygraph,
}

impl std::fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut s = String::new();
        render(self.p, self.expr, &mut s);
        f.write_str(&s)
    }
}

fn render(p: &Polygraph, e: &ThreeCellExpr, out: &mut String) {
    let nested = |e: &ThreeCellExpr, out: &mut String| {
        let atomic = matches!(e, ThreeCellExpr::Gen(_) | ThreeCellExpr::Inv(_) | ThreeCellExpr::Id2(_));
        if !atomic {
            out.push('(');
        }
        render(p, e, out);
        if !atomic {
            out.push(')');
        }
    };
    match e {
        ThreeCellExpr::Gen(i) => match p.three_cells().get(*i) {
            Some(c) => out.push_str(&c.name),
            None => {
                let _ = write!(out, "#{i}");
            }
        },
        ThreeCellExpr::Inv(inner) => {
            out.push_str("inv(");
            render(p, inner, out);
            out.push(')');
        }
        ThreeCellExpr::Whisker { left, inner, right } => {
            let _ = write!(out, "{} * ", p.show_word(left));
            nested(inner, out);
            let _ = write!(out, " * {}", p.show_word(right));
        }
        ThreeCellExpr::Comp1 { pre, inner, post } => {
            if !pre.is_identity() {
                let _ = write!(out, "({}) . ", show_zigzag(p, pre));
            }
            nested(inner, out);
            if !post.is_identity() {
                let _ = write!(out, " . ({})", show_zigzag(p, post));
            }
        }
        ThreeCellExpr::Comp2(a, b) => {
            nested(a, out);
            out.push_str(" ; ");
            nested(b, out);
        }
        ThreeCellExpr::Id2(z) => {
            let _ = write!(out, "id2({})", show_zigzag(p, z));
        }
        ThreeCellExpr::Exchange { first, second, .. } => {
            let _ = write!(out, "exch({} , {})", show_step(p, first), show_step(p, second));
        }
    }
}
