use thiserror::Error;

use crate::presentation::{Polygraph, PresentationError, RuleRef, ThreeCell, Word};
use crate::rewrite::{RewriteStep, ZigZag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("line {0}: {1}")]
    Syntax(usize, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("missing product {0} {1}")]
    Missing(String, String),
    #[error("not associative: ({0} {1}) {2} != {0} ({1} {2})")]
    NotAssociative(String, String, String),
    #[error("`{0}` is not a unit")]
    NotUnit(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// Multiplication table of a finite monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidTable {
    pub elements: Vec<String>,
    pub unit: usize,
    /// `mul[u][v]` is the index of `uv`.
    pub mul: Vec<Vec<usize>>,
}

impl MonoidTable {
    /// Check associativity and the unit laws.
    pub fn validate(&self) -> Result<(), TableError> {
        let n = self.elements.len();
        let name = |i: usize| self.elements[i].clone();
        for u in 0..n {
            if self.mul[self.unit][u] != u || self.mul[u][self.unit] != u {
                return Err(TableError::NotUnit(name(self.unit)));
            }
            for v in 0..n {
                for w in 0..n {
                    if self.mul[self.mul[u][v]][w] != self.mul[u][self.mul[v][w]] {
                        return Err(TableError::NotAssociative(name(u), name(v), name(w)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parse `elements: ...`, `unit: e` and rows `u v = w`. Rows with a unit factor may be omitted.
pub fn parse_table(text: &str) -> Result<MonoidTable, TableError> {
    let mut elements: Vec<String> = Vec::new();
    let mut unit = None;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("elements:") {
            elements = rest.split_whitespace().map(String::from).collect();
        } else if let Some(rest) = line.strip_prefix("unit:") {
            unit = Some(rest.trim().to_string());
        } else {
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| TableError::Syntax(i + 1, "expected `u v = w`".into()))?;
            let l: Vec<&str> = lhs.split_whitespace().collect();
            let r: Vec<&str> = rhs.split_whitespace().collect();
            if l.len() != 2 || r.len() != 1 {
                return Err(TableError::Syntax(i + 1, "expected `u v = w`".into()));
            }
            rows.push((l[0].to_string(), l[1].to_string(), r[0].to_string()));
        }
    }
    let find = |s: &str| elements.iter().position(|e| e == s).ok_or_else(|| TableError::UnknownElement(s.into()));
    let unit = unit.ok_or_else(|| TableError::Syntax(0, "missing `unit:`".into()))?;
    let e = find(&unit)?;
    let n = elements.len();
    let mut mul = vec![vec![usize::MAX; n]; n];
    for u in 0..n {
        mul[e][u] = u;
        mul[u][e] = u;
    }
    for (u, v, w) in &rows {
        mul[find(u)?][find(v)?] = find(w)?;
    }
    for u in 0..n {
        for v in 0..n {
            if mul[u][v] == usize::MAX {
                return Err(TableError::Missing(elements[u].clone(), elements[v].clone()));
            }
        }
    }
    Ok(MonoidTable { elements, unit: e, mul })
}

fn gen_name(element: &str) -> String {
    if element == "1" {
        "one".into()
    } else {
        element.into()
    }
}

/// The standard coherent presentation: generators û, rules `gamma_u_v: û v̂ => (uv)^` and
/// `iota: 1 => 1̂`, 3-cells `alpha_u_v_w`, `lambda_u` and `rho_u`.
///
/// `iota` has an identity source, so the result is reported by `validate`
/// and is not meant to be rewritten with.
pub fn standard_coherent_presentation(m: &MonoidTable) -> Result<Polygraph, TableError> {
    m.validate()?;
    let n = m.elements.len();
    let names: Vec<String> = m.elements.iter().map(|e| gen_name(e)).collect();
    let mut p = Polygraph::monoid();
    let gens: Vec<usize> = names.iter().map(|s| p.add_generator(s)).collect::<Result<_, _>>()?;
    let hat = |u: usize| Word::monoid(&[gens[u]]);
    let word2 = |u: usize, v: usize| Word::monoid(&[gens[u], gens[v]]);
    let one = Word::identity(0);
    let mut gamma = vec![vec![RuleRef::Plain(0); n]; n];
    for u in 0..n {
        for v in 0..n {
            gamma[u][v] = p.add_rule(&format!("gamma_{}_{}", names[u], names[v]), word2(u, v), hat(m.mul[u][v]))?;
        }
    }
    let iota = p.push_rule("iota", one.clone(), hat(m.unit))?;
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let uv = m.mul[u][v];
                let vw = m.mul[v][w];
                let src = Word::monoid(&[gens[u], gens[v], gens[w]]);
                let source = ZigZag::new(
                    src.clone(),
                    vec![RewriteStep::forward(one.clone(), gamma[u][v], hat(w)), RewriteStep::forward(one.clone(), gamma[uv][w], one.clone())],
                );
                let target = ZigZag::new(
                    src,
                    vec![RewriteStep::forward(hat(u), gamma[v][w], one.clone()), RewriteStep::forward(one.clone(), gamma[u][vw], one.clone())],
                );
                let name = format!("alpha_{}_{}_{}", names[u], names[v], names[w]);
                p.add_three_cell(ThreeCell { name, source, target })?;
            }
        }
    }
    let e = m.unit;
    for u in 0..n {
        let source = ZigZag::new(
            hat(u),
            vec![RewriteStep::forward(one.clone(), iota, hat(u)), RewriteStep::forward(one.clone(), gamma[e][u], one.clone())],
        );
        p.add_three_cell(ThreeCell { name: format!("lambda_{}", names[u]), source, target: ZigZag::identity(hat(u)) })?;
    }
    for u in 0..n {
        let source = ZigZag::new(
            hat(u),
            vec![RewriteStep::forward(hat(u), iota, one.clone()), RewriteStep::forward(one.clone(), gamma[u][e], one.clone())],
        );
        p.add_three_cell(ThreeCell { name: format!("rho_{}", names[u]), source, target: ZigZag::identity(hat(u)) })?;
    }
    Ok(p)
}
