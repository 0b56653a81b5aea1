use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::presentation::{GenId, Polygraph, RuleRef, Word};

/// An element of the monoid, represented by its normal form.
pub type MonoidElt = Word;

/// A basis cell of ZM[Σₖ].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Gen(GenId),
    Rule(RuleRef),
    Three(usize),
}

/// Finite integer combination with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lin<K: Ord> {
    terms: BTreeMap<K, BigInt>,
}

/// ZM: combinations of normal forms.
pub type RingElt = Lin<MonoidElt>;
/// ZM[Σₖ]: combinations of `u[x]`.
pub type ModuleElt = Lin<(MonoidElt, Cell)>;

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c.into());
        out
    }

    pub fn add_term(&mut self, k: K, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &BigInt) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn coefficient(&self, k: &K) -> BigInt {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigInt)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigInt)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone> Add for Lin<K> {
    type Output = Lin<K>;
    fn add(mut self, other: Lin<K>) -> Lin<K> {
        self.add_scaled(&other, &BigInt::one());
        self
    }
}

impl<K: Ord + Clone> Sub for Lin<K> {
    type Output = Lin<K>;
    fn sub(mut self, other: Lin<K>) -> Lin<K> {
        self.add_scaled(&other, &-BigInt::one());
        self
    }
}

impl<K: Ord + Clone> Neg for Lin<K> {
    type Output = Lin<K>;
    fn neg(self) -> Lin<K> {
        self.scale(&-BigInt::one())
    }
}

/// Basis names: generators, rules, and 3-cells of `cells`.
pub fn cell_name(p: &Polygraph, c: Cell) -> String {
    match c {
        Cell::Gen(g) => p.generators()[g].name.clone(),
        Cell::Rule(r) => p.rule_name(r),
        Cell::Three(i) => p.three_cells().get(i).map(|c| c.name.clone()).unwrap_or_else(|| format!("#{i}")),
    }
}

fn push_signed(out: &mut String, c: &BigInt, body: &str, unit_body: &str) {
    let neg = c < &BigInt::zero();
    let mag = if neg { -c } else { c.clone() };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if mag.is_one() {
        out.push_str(if body.is_empty() { unit_body } else { body });
    } else if body.is_empty() {
        out.push_str(&mag.to_string());
    } else {
        out.push_str(&format!("{mag}{body}"));
    }
}

fn word_text(p: &Polygraph, w: &Word) -> String {
    if w.is_identity() {
        return String::new();
    }
    let short = p.generators().iter().all(|g| g.name.chars().count() == 1);
    p.show_word(w).replace(' ', if short { "" } else { "\u{b7}" })
}

/// `2a - 1` style rendering.
pub fn show_ring(p: &Polygraph, r: &RingElt) -> String {
    let mut out = String::new();
    for (w, c) in r.iter() {
        push_signed(&mut out, c, &word_text(p, w), "1");
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// `a[mu] - [mu]` style rendering.
pub fn show_module(p: &Polygraph, m: &ModuleElt) -> String {
    let mut out = String::new();
    for ((w, cell), c) in m.iter() {
        let body = format!("{}[{}]", word_text(p, w), cell_name(p, *cell));
        push_signed(&mut out, c, &body, &body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// `coef*word` terms joined by ` + `, as used by the symbolic matrix files.
pub fn show_ring_terms(p: &Polygraph, r: &RingElt) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = r.iter().map(|(w, c)| format!("{c}*{}", if w.is_identity() { "1".into() } else { word_text(p, w) })).collect();
    terms.join(" + ")
}
