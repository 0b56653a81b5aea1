//! Text format for polygraphs.
//!
//! ```text
//! monoid
//! generators: s t a
//! order: a < s < t
//! rules:
//!   alpha: t a => a s
//!   beta: s t => a
//! ```

use super::{GenId, Kind, Polygraph, PresentationError, PumpedRule, RuleRef, ThreeCell};
use crate::rewrite::{show_zigzag, Direction, RewriteStep, ZigZag};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Num(u64),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const SYMBOLS: [&str; 16] = ["===", "=>", "->", "^-", ":", "<", "(", ")", "^", "[", "]", "*", ".", "+", ";", ","];

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, PresentationError> {
    let mut out = Vec::new();
    for (lno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap();
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: lno + 1, col });
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse().map_err(|_| PresentationError::Syntax {
                    line: lno + 1,
                    col,
                    msg: format!("number `{s}` too large"),
                })?;
                out.push(Token { tok: Tok::Num(n), line: lno + 1, col });
                continue;
            }
            let rest: String = chars[i..].iter().collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    out.push(Token { tok: Tok::Sym(s), line: lno + 1, col });
                    i += s.chars().count();
                }
                None => {
                    return Err(PresentationError::Syntax { line: lno + 1, col, msg: format!("unexpected character `{c}`") })
                }
            }
        }
    }
    Ok(out)
}

const SECTIONS: [&str; 6] = ["objects", "generators", "order", "rules", "pumped", "threecells"];

pub(crate) struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    last: (usize, usize),
}

impl<'a> Parser<'a> {
    pub(crate) fn new(toks: &'a [Token]) -> Parser<'a> {
        Parser { toks, pos: 0, last: (1, 1) }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos)?;
        self.last = (t.line, t.col);
        self.pos += 1;
        Some(t.tok.clone())
    }

    fn err(&self, msg: impl Into<String>) -> PresentationError {
        let (line, col) = match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => self.last,
        };
        PresentationError::Syntax { line, col, msg: msg.into() }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), PresentationError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    fn ident(&mut self) -> Result<String, PresentationError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            _ => Err(self.err("expected a name")),
        }
    }

    fn num(&mut self) -> Result<u64, PresentationError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.next();
                Ok(n)
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn section_ahead(&self) -> Option<&str> {
        match (self.peek(), self.peek_at(1)) {
            (Some(Tok::Ident(s)), Some(Tok::Sym(":"))) if SECTIONS.contains(&s.as_str()) => Some(s.as_str()),
            _ => None,
        }
    }

    fn expect_section(&mut self, name: &str) -> Result<(), PresentationError> {
        if self.section_ahead() == Some(name) {
            self.pos += 2;
            Ok(())
        } else {
            Err(self.err(format!("expected `{name}:`")))
        }
    }

    /// Name followed by `:` or `[`: the start of the next item.
    fn item_ahead(&self) -> bool {
        matches!(
            (self.peek(), self.peek_at(1)),
            (Some(Tok::Ident(_)), Some(Tok::Sym(":"))) | (Some(Tok::Ident(_)), Some(Tok::Sym("[")))
        )
    }

    /// Generator names (or `1`) up to the next non-letter token or item start.
    fn raw_word(&mut self, p: &Polygraph) -> Result<Vec<GenId>, PresentationError> {
        let mut letters = Vec::new();
        let mut any = false;
        loop {
            match self.peek() {
                Some(Tok::Num(1)) => {
                    self.next();
                    any = true;
                }
                Some(Tok::Ident(name)) if !self.item_ahead() => {
                    if name == "id" && self.peek_at(1) == Some(&Tok::Sym("(")) {
                        break;
                    }
                    let id = p.generator_id(name).ok_or_else(|| PresentationError::UnknownGenerator(name.clone()))?;
                    self.next();
                    letters.push(id);
                    any = true;
                }
                _ => break,
            }
        }
        if !any {
            return Err(self.err("expected a word"));
        }
        Ok(letters)
    }

    fn skip_separators(&mut self) {
        while self.eat_sym(";") || self.eat_sym(",") {}
    }

    fn rule_ref(&mut self, p: &Polygraph) -> Result<RuleRef, PresentationError> {
        let name = self.ident()?;
        if self.eat_sym("[") {
            let n = self.num()?;
            self.expect_sym("]")?;
            let family = p
                .pumped
                .iter()
                .position(|r| r.stem == name)
                .ok_or_else(|| PresentationError::UnknownRule(format!("{name}[{n}]")))?;
            return Ok(RuleRef::Pumped { family, n: n as u32 });
        }
        p.rule_ref(&name).ok_or(PresentationError::UnknownRule(name))
    }

    /// `w1 * rule * w2` or `w1 * rule^- * w2`.
    pub(crate) fn step(&mut self, p: &Polygraph) -> Result<RewriteStep, PresentationError> {
        let left = self.raw_word(p)?;
        self.expect_sym("*")?;
        let rule = self.rule_ref(p)?;
        let direction = if self.eat_sym("^-") { Direction::Backward } else { Direction::Forward };
        self.expect_sym("*")?;
        let right = self.raw_word(p)?;
        let lhs = p.lhs(rule);
        let left = p.word(&left, lhs.source())?;
        let right = p.word(&right, lhs.target())?;
        if left.target() != lhs.source() || lhs.target() != right.source() {
            return Err(self.err("step context is not composable with the rule"));
        }
        Ok(RewriteStep { left, rule, right, direction })
    }

    /// `id(w)` or steps joined by `.`.
    pub(crate) fn zigzag(&mut self, p: &Polygraph) -> Result<ZigZag, PresentationError> {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == "id") && self.peek_at(1) == Some(&Tok::Sym("(")) {
            self.pos += 2;
            let letters = self.raw_word(p)?;
            self.expect_sym(")")?;
            return Ok(ZigZag::identity(p.word(&letters, 0)?));
        }
        let first = self.step(p)?;
        let mut z = ZigZag::step(p, first);
        while self.eat_sym(".") {
            z.push(self.step(p)?);
        }
        z.target(p).map_err(|e| self.err(e.to_string()))?;
        Ok(z)
    }

    fn affine(&mut self) -> Result<(u32, u32), PresentationError> {
        let (mut pc, mut qc) = (0u32, 0u32);
        loop {
            match self.peek() {
                Some(Tok::Ident(s)) if s == "n" => {
                    self.next();
                    pc += 1;
                }
                Some(Tok::Num(_)) => {
                    let k = self.num()? as u32;
                    if self.eat_sym("*") {
                        match self.ident()?.as_str() {
                            "n" => pc += k,
                            _ => return Err(self.err("expected `n`")),
                        }
                    } else {
                        qc += k;
                    }
                }
                _ => return Err(self.err("expected an affine expression in n")),
            }
            if !self.eat_sym("+") {
                break;
            }
        }
        if pc > 1 {
            return Err(self.err("coefficient of n must be 0 or 1"));
        }
        Ok((pc, qc))
    }

    fn pumped_rule(&mut self, p: &Polygraph) -> Result<PumpedRule, PresentationError> {
        let stem = self.ident()?;
        self.expect_sym("[")?;
        match self.next() {
            Some(Tok::Ident(s)) if s == "n" => {}
            _ => return Err(self.err("expected `[n]`")),
        }
        self.expect_sym("]")?;
        self.expect_sym(":")?;
        let lp = self.raw_word(p)?;
        self.expect_sym("(")?;
        let pump_name = self.ident()?;
        let pump = p.generator_id(&pump_name).ok_or_else(|| PresentationError::UnknownGenerator(pump_name.clone()))?;
        self.expect_sym(")")?;
        self.expect_sym("^")?;
        match self.next() {
            Some(Tok::Ident(s)) if s == "n" => {}
            _ => return Err(self.err("expected `^n`")),
        }
        let ls = self.raw_word(p)?;
        self.expect_sym("=>")?;
        let rp = self.raw_word(p)?;
        self.expect_sym("(")?;
        let pump2 = self.ident()?;
        if pump2 != pump_name {
            return Err(self.err("rhs pump letter must match the lhs pump letter"));
        }
        self.expect_sym(")")?;
        self.expect_sym("^")?;
        self.expect_sym("(")?;
        let (pc, qc) = self.affine()?;
        self.expect_sym(")")?;
        let rs = self.raw_word(p)?;
        let obj = p.generators[pump].source;
        Ok(PumpedRule {
            stem,
            lhs_prefix: p.word(&lp, obj)?,
            lhs_suffix: p.word(&ls, obj)?,
            rhs_prefix: p.word(&rp, obj)?,
            rhs_suffix: p.word(&rs, obj)?,
            pump,
            p: pc,
            q: qc,
        })
    }
}

/// Parse and validate a presentation file.
pub fn parse_polygraph(text: &str) -> Result<Polygraph, PresentationError> {
    let toks = tokenize(text)?;
    let mut ps = Parser::new(&toks);
    let header = ps.ident().map_err(|_| ps.err("expected `monoid` or `category`"))?;
    let mut p = match header.as_str() {
        "monoid" => Polygraph::monoid(),
        "category" => {
            ps.expect_section("objects")?;
            let mut names = Vec::new();
            while ps.section_ahead().is_none() && !ps.at_end() {
                names.push(ps.ident()?);
                ps.skip_separators();
            }
            Polygraph::category(&names)?
        }
        _ => return Err(PresentationError::Syntax { line: 1, col: 1, msg: "expected `monoid` or `category`".into() }),
    };

    ps.expect_section("generators")?;
    while ps.section_ahead().is_none() && !ps.at_end() {
        let name = ps.ident()?;
        if ps.eat_sym(":") {
            let s = ps.ident()?;
            ps.expect_sym("->")?;
            let t = ps.ident()?;
            if p.kind == Kind::Monoid {
                return Err(ps.err("typed generators need a `category` header"));
            }
            p.add_typed_generator(&name, &s, &t)?;
        } else {
            if p.kind == Kind::Category {
                return Err(ps.err(format!("generator `{name}` needs `: source -> target`")));
            }
            p.add_generator(&name)?;
        }
        ps.skip_separators();
    }

    if ps.section_ahead() == Some("order") {
        ps.pos += 2;
        let mut names = vec![ps.ident()?];
        while ps.eat_sym("<") {
            names.push(ps.ident()?);
        }
        p.set_order(&names)?;
    }

    ps.expect_section("rules")?;
    while ps.section_ahead().is_none() && !ps.at_end() {
        let name = ps.ident()?;
        ps.expect_sym(":")?;
        let lhs = ps.raw_word(&p)?;
        ps.expect_sym("=>")?;
        let rhs = ps.raw_word(&p)?;
        if lhs.is_empty() {
            return Err(PresentationError::IdentityLhs(name));
        }
        let lhs = p.word(&lhs, 0)?;
        let rhs = p.word(&rhs, lhs.source())?;
        p.add_rule(&name, lhs, rhs)?;
        ps.skip_separators();
    }

    if ps.section_ahead() == Some("pumped") {
        ps.pos += 2;
        while ps.section_ahead().is_none() && !ps.at_end() {
            let r = ps.pumped_rule(&p)?;
            p.add_pumped_rule(r)?;
            ps.skip_separators();
        }
    }

    if ps.section_ahead() == Some("threecells") {
        ps.pos += 2;
        while !ps.at_end() {
            let name = ps.ident()?;
            ps.expect_sym(":")?;
            let source = ps.zigzag(&p)?;
            ps.expect_sym("===")?;
            let target = ps.zigzag(&p)?;
            p.add_three_cell(ThreeCell { name, source, target })?;
            ps.skip_separators();
        }
    }

    if !ps.at_end() {
        return Err(ps.err("unexpected trailing input"));
    }
    let diags = p.validate();
    if let Some(d) = diags.first() {
        return Err(PresentationError::Invalid(d.0.clone()));
    }
    Ok(p)
}

/// Parse a zigzag in the step syntax against `p`.
pub(crate) fn parse_zigzag_text(p: &Polygraph, text: &str) -> Result<ZigZag, PresentationError> {
    let toks = tokenize(text)?;
    let mut ps = Parser::new(&toks);
    let z = ps.zigzag(p)?;
    if !ps.at_end() {
        return Err(ps.err("unexpected trailing input"));
    }
    Ok(z)
}

fn show_pumped(p: &Polygraph, r: &PumpedRule) -> String {
    let g = &p.generators[r.pump].name;
    format!(
        "{}[n]: {} ({g})^n {} => {} ({g})^({}) {}",
        r.stem,
        p.show_word(&r.lhs_prefix),
        p.show_word(&r.lhs_suffix),
        p.show_word(&r.rhs_prefix),
        r.exponent_text(),
        p.show_word(&r.rhs_suffix),
    )
}

pub fn serialize_polygraph(p: &Polygraph) -> String {
    let mut lines = Vec::new();
    match p.kind {
        Kind::Monoid => lines.push("monoid".to_string()),
        Kind::Category => {
            lines.push("category".to_string());
            lines.push(format!("objects: {}", p.objects.join(" ")));
        }
    }
    match p.kind {
        Kind::Monoid => {
            let names: Vec<&str> = p.generators.iter().map(|g| g.name.as_str()).collect();
            lines.push(format!("generators:{}{}", if names.is_empty() { "" } else { " " }, names.join(" ")));
        }
        Kind::Category => {
            lines.push("generators:".to_string());
            for g in &p.generators {
                lines.push(format!("  {}: {} -> {}", g.name, p.objects[g.source], p.objects[g.target]));
            }
        }
    }
    if let Some(order) = &p.order {
        let names: Vec<&str> = order.iter().map(|&g| p.generators[g].name.as_str()).collect();
        lines.push(format!("order: {}", names.join(" < ")));
    }
    lines.push("rules:".to_string());
    for r in &p.rules {
        lines.push(format!("  {}: {} => {}", r.name, p.show_word(&r.lhs), p.show_word(&r.rhs)));
    }
    if !p.pumped.is_empty() {
        lines.push("pumped:".to_string());
        for r in &p.pumped {
            lines.push(format!("  {}", show_pumped(p, r)));
        }
    }
    if !p.three_cells.is_empty() {
        lines.push("threecells:".to_string());
        for c in &p.three_cells {
            lines.push(format!("  {}: {} === {}", c.name, show_zigzag(p, &c.source), show_zigzag(p, &c.target)));
        }
    }
    lines.join("\n")
}

impl Polygraph {
    pub fn parse(text: &str) -> Result<Polygraph, PresentationError> {
        parse_polygraph(text)
    }

    pub fn to_text(&self) -> String {
        serialize_polygraph(self)
    }

    pub fn parse_zigzag(&self, text: &str) -> Result<ZigZag, PresentationError> {
        parse_zigzag_text(self, text)
    }
}
