use std::collections::BTreeMap;

use thiserror::Error;

use crate::presentation::{Polygraph, PresentationError, RuleRef, ThreeCell, Word};
use crate::rewrite::{RewriteStep, ZigZag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransferError {
    #[error("no image for {0}")]
    MissingImage(String),
    #[error("image of {0} has the wrong boundary")]
    BadImage(String),
    #[error("the two presentations have different 0-cells")]
    Objects,
    #[error("pumped rules in the target presentation are not supported")]
    PumpedTarget,
    #[error("line {0}: {1}")]
    Syntax(usize, String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// A 2-functor between free (2,1)-categories, given on generators and rules.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Morphism {
    pub gens: Vec<Option<Word>>,
    pub rules: BTreeMap<RuleRef, ZigZag>,
}

impl Morphism {
    /// Same-named generators, and same-named rules whose boundaries agree.
    pub fn by_name(src: &Polygraph, dst: &Polygraph) -> Morphism {
        let gens = src
            .generators()
            .iter()
            .map(|g| dst.generator_id(&g.name).and_then(|h| dst.word(&[h], dst.generators()[h].source).ok()))
            .collect();
        let mut m = Morphism { gens, rules: BTreeMap::new() };
        m.fill_rules_by_name(src, dst);
        m
    }

    fn fill_rules_by_name(&mut self, src: &Polygraph, dst: &Polygraph) {
        for r in src.rule_refs(0) {
            if self.rules.contains_key(&r) {
                continue;
            }
            let name = src.rule_name(r);
            let Some(d) = dst.rule_ref(&name) else { continue };
            let (Ok(l), Ok(rr)) = (self.word(&src.lhs(r)), self.word(&src.rhs(r))) else { continue };
            if *dst.lhs(d) == l && *dst.rhs(d) == rr {
                self.rules.insert(r, ZigZag::step(dst, RewriteStep::at(dst, &l, d, 0)));
            }
        }
    }

    pub fn word(&self, w: &Word) -> Result<Word, TransferError> {
        let mut out = Word::identity(w.source());
        for (i, &g) in w.letters().iter().enumerate() {
            let img = self.gens.get(g).cloned().flatten().ok_or_else(|| TransferError::MissingImage(format!("generator #{g}")))?;
            if img.source() != w.object_at(i) || img.target() != w.object_at(i + 1) {
                return Err(TransferError::BadImage(format!("generator #{g}")));
            }
            out = out.concat(&img);
        }
        Ok(out)
    }

    fn rule_image(&self, src: &Polygraph, r: RuleRef) -> Result<&ZigZag, TransferError> {
        self.rules.get(&r).ok_or_else(|| TransferError::MissingImage(format!("rule {}", src.rule_name(r))))
    }

    /// Check every given rule image against the images of its sides.
    pub fn validate(&self, src: &Polygraph, dst: &Polygraph) -> Result<(), TransferError> {
        for (&r, z) in &self.rules {
            let name = src.rule_name(r);
            if !src.has_rule(r) {
                return Err(TransferError::MissingImage(name));
            }
            let l = self.word(&src.lhs(r))?;
            let rr = self.word(&src.rhs(r))?;
            let t = z.target(dst).map_err(|_| TransferError::BadImage(name.clone()))?;
            if z.source() != &l || t != rr {
                return Err(TransferError::BadImage(name));
            }
        }
        Ok(())
    }

    pub fn step(&self, src: &Polygraph, dst: &Polygraph, s: &RewriteStep) -> Result<ZigZag, TransferError> {
        let img = self.rule_image(src, s.rule)?;
        let img = if s.is_forward() {
            img.clone()
        } else {
            img.inverse(dst).map_err(|_| TransferError::BadImage(src.rule_name(s.rule)))?
        };
        Ok(img.whisker(&self.word(&s.left)?, &self.word(&s.right)?))
    }

    pub fn zigzag(&self, src: &Polygraph, dst: &Polygraph, z: &ZigZag) -> Result<ZigZag, TransferError> {
        let mut out = ZigZag::identity(self.word(z.source())?);
        for s in z.steps() {
            out = out.then(&self.step(src, dst, s)?);
        }
        Ok(out)
    }
}

/// Data of the transfer: `f : Σ → Ξ`, `g : Ξ → Σ` and `tau_v : FG(v) ⇒ v` in Ξ per generator of Ξ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferData {
    pub f: Morphism,
    pub g: Morphism,
    pub tau: Vec<ZigZag>,
}

impl TransferData {
    /// Everything by name, `tau` identities.
    pub fn by_name(sigma: &Polygraph, xi: &Polygraph) -> TransferData {
        let f = Morphism::by_name(sigma, xi);
        let g = Morphism::by_name(xi, sigma);
        let tau = xi
            .generators()
            .iter()
            .enumerate()
            .map(|(h, gen)| ZigZag::identity(xi.word(&[h], gen.source).unwrap()))
            .collect();
        TransferData { f, g, tau }
    }
}

/// `tau_w : FG(w) ⇒ w`, by horizontal composition of the generator cases.
fn tau_word(data: &TransferData, xi: &Polygraph, w: &Word) -> Result<ZigZag, TransferError> {
    let mut out = ZigZag::identity(Word::identity(w.source()));
    for &h in w.letters() {
        out = out.horizontal(&data.tau[h], xi).map_err(|_| TransferError::BadImage(format!("tau of #{h}")))?;
    }
    Ok(out)
}

fn check_tau(data: &TransferData, xi: &Polygraph) -> Result<(), TransferError> {
    if data.tau.len() != xi.generators().len() {
        return Err(TransferError::MissingImage("tau".into()));
    }
    for (h, z) in data.tau.iter().enumerate() {
        let name = format!("tau_{}", xi.generators()[h].name);
        let v = xi.word(&[h], xi.generators()[h].source)?;
        let fg = data.f.word(&data.g.word(&v)?)?;
        let t = z.target(xi).map_err(|_| TransferError::BadImage(name.clone()))?;
        if z.source() != &fg || t != v {
            return Err(TransferError::BadImage(name));
        }
    }
    Ok(())
}

/// `F(Γ)` plus one cell `tau_α : FG(α) ⋆₁ tau_v ⇛ tau_u ⋆₁ α` per rule `α : u ⇒ v` of Ξ.
pub fn transfer_homotopy_basis(
    sigma: &Polygraph,
    xi: &Polygraph,
    data: &TransferData,
    gamma: &[ThreeCell],
) -> Result<Polygraph, TransferError> {
    if sigma.objects() != xi.objects() {
        return Err(TransferError::Objects);
    }
    if !xi.pumped_rules().is_empty() {
        return Err(TransferError::PumpedTarget);
    }
    data.f.validate(sigma, xi)?;
    data.g.validate(xi, sigma)?;
    check_tau(data, xi)?;
    let mut out = xi.clone();
    out.three_cells.clear();
    for c in gamma {
        let source = data.f.zigzag(sigma, xi, &c.source)?;
        let target = data.f.zigzag(sigma, xi, &c.target)?;
        out.add_three_cell(ThreeCell { name: format!("{}'", c.name), source, target })?;
    }
    for r in xi.rule_refs(0) {
        let name = xi.rule_name(r);
        let gi = data.g.rule_image(xi, r)?;
        let fg = data.f.zigzag(sigma, xi, gi)?;
        let tau_u = tau_word(data, xi, &xi.lhs(r))?;
        let tau_v = tau_word(data, xi, &xi.rhs(r))?;
        let alpha = ZigZag::step(xi, RewriteStep::at(xi, &xi.lhs(r), r, 0));
        out.add_three_cell(ThreeCell { name: format!("tau_{name}"), source: fg.then(&tau_v), target: tau_u.then(&alpha) })?;
    }
    Ok(out)
}

/// Map file: sections `F:`, `G:` and `tau:` with lines `name -> image`.
///
/// Generators map to words and rules (`name` or `name[k]`) to 2-cells in path syntax.
/// Anything not listed maps by name; `tau` defaults to identities.
pub fn parse_transfer_map(sigma: &Polygraph, xi: &Polygraph, text: &str) -> Result<TransferData, TransferError> {
    let mut data = TransferData::by_name(sigma, xi);
    data.f.rules.clear();
    data.g.rules.clear();
    let mut section = None;
    let mut f_rules = Vec::new();
    let mut g_rules = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(s) = line.strip_suffix(':').filter(|s| ["F", "G", "tau"].contains(s)) {
            section = Some(s.to_string());
            continue;
        }
        let (key, image) = line
            .split_once("->")
            .map(|(a, b)| (a.trim(), b.trim()))
            .ok_or_else(|| TransferError::Syntax(i + 1, "expected `name -> image`".into()))?;
        let syntax = |m: &str| TransferError::Syntax(i + 1, m.into());
        match section.as_deref() {
            Some("F") | Some("G") => {
                let (src, dst) = if section.as_deref() == Some("F") { (sigma, xi) } else { (xi, sigma) };
                let m = if section.as_deref() == Some("F") { &mut data.f } else { &mut data.g };
                if let Some(h) = src.generator_id(key) {
                    m.gens[h] = Some(dst.parse_word_at(image, src.generators()[h].source)?);
                } else if let Some(r) = src.rule_ref(key) {
                    let z = dst.parse_zigzag(image)?;
                    if section.as_deref() == Some("F") {
                        f_rules.push((r, z));
                    } else {
                        g_rules.push((r, z));
                    }
                } else {
                    return Err(syntax(&format!("unknown generator or rule `{key}`")));
                }
            }
            Some("tau") => {
                let h = xi.generator_id(key).ok_or_else(|| syntax(&format!("unknown generator `{key}`")))?;
                data.tau[h] = xi.parse_zigzag(image)?;
            }
            _ => return Err(syntax("entry outside a section")),
        }
    }
    data.f.rules.extend(f_rules);
    data.g.rules.extend(g_rules);
    data.f.fill_rules_by_name(sigma, xi);
    data.g.fill_rules_by_name(xi, sigma);
    Ok(data)
}
