//! Interpretation certificates: each generator acts on ℕ by an affine map
//! and carries a derivation `∂` that is a sum of exponentials. A rule
//! `u ⇒ v` decreases when `v_* ≤ u_*` and `∂v < ∂u` pointwise.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::presentation::{GenId, Polygraph, PresentationError, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Affine {
    pub a: u64,
    pub b: u64,
}

impl Affine {
    pub const IDENTITY: Affine = Affine { a: 1, b: 0 };

    pub fn apply(&self, n: u64) -> Option<u64> {
        self.a.checked_mul(n)?.checked_add(self.b)
    }
}

/// `Σ c·βⁿ` with `β ∈ {1, 2, 3}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExpPoly {
    pub terms: Vec<(u64, u32)>,
}

impl ExpPoly {
    pub fn eval(&self, n: u64) -> BigUint {
        let mut total = BigUint::zero();
        for &(c, beta) in &self.terms {
            total += BigUint::from(c) * BigUint::from(beta).pow(n as u32);
        }
        total
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpretationCert {
    entries: Vec<Option<(Affine, ExpPoly)>>,
}

impl InterpretationCert {
    pub fn new(p: &Polygraph) -> InterpretationCert {
        InterpretationCert { entries: vec![None; p.generators().len()] }
    }

    pub fn set(&mut self, g: GenId, star: Affine, der: ExpPoly) {
        if g >= self.entries.len() {
            self.entries.resize(g + 1, None);
        }
        self.entries[g] = Some((star, der));
    }

    pub fn missing(&self, p: &Polygraph) -> Vec<String> {
        (0..p.generators().len())
            .filter(|&g| self.entries.get(g).is_none_or(Option::is_none))
            .map(|g| p.generators()[g].name.clone())
            .collect()
    }

    /// `(w_*(n), ∂w(n))`, using `(uv)_* = v_* ∘ u_*` and `∂(uv)(n) = ∂u(n) + ∂v(u_*(n))`.
    pub fn eval(&self, w: &Word, n: u64) -> Option<(u64, BigUint)> {
        let mut m = n;
        let mut der = BigUint::zero();
        for &g in w.letters() {
            let (star, d) = self.entries.get(g)?.as_ref()?;
            der += d.eval(m);
            m = star.apply(m)?;
        }
        Some((m, der))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertVerdict {
    /// Every sampled inequality held; not a proof.
    PassSampled,
    Fail { rule: String, n: u64, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertReport {
    pub verdict: CertVerdict,
    pub sample_bound: u64,
    pub checks: usize,
}

impl CertReport {
    pub fn passed(&self) -> bool {
        self.verdict == CertVerdict::PassSampled
    }
}

/// Falsification check of the certificate on every rule (pumped instances up
/// to `pump_bound`) and every `n ≤ sample_bound`.
pub fn check_interpretation_certificate(
    p: &Polygraph,
    cert: &InterpretationCert,
    sample_bound: u64,
    pump_bound: u32,
) -> Result<CertReport, PresentationError> {
    let missing = cert.missing(p);
    if !missing.is_empty() {
        return Err(PresentationError::Invalid(format!("certificate misses generators: {}", missing.join(", "))));
    }
    let mut checks = 0;
    for r in p.rule_refs(pump_bound) {
        let (lhs, rhs) = (p.lhs(r), p.rhs(r));
        for n in 0..=sample_bound {
            checks += 1;
            let fail = |reason: &str| CertReport {
                verdict: CertVerdict::Fail { rule: p.rule_name(r), n, reason: reason.into() },
                sample_bound,
                checks,
            };
            let (Some((us, ud)), Some((vs, vd))) = (cert.eval(&lhs, n), cert.eval(&rhs, n)) else {
                return Ok(fail("overflow in the affine part"));
            };
            if us < vs {
                return Ok(fail(&format!("lhs_* = {us} < {vs} = rhs_*")));
            }
            if ud <= vd {
                return Ok(fail(&format!("derivation {ud} <= {vd}")));
            }
        }
    }
    Ok(CertReport { verdict: CertVerdict::PassSampled, sample_bound, checks })
}

fn parse_uint(s: &str) -> Result<u64, String> {
    s.trim().parse::<u64>().map_err(|_| format!("expected a natural number, got `{}`", s.trim()))
}

fn parse_affine(s: &str) -> Result<Affine, String> {
    let mut aff = Affine { a: 0, b: 0 };
    for term in s.split('+') {
        let t: String = term.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "n" {
            aff.a += 1;
        } else if let Some(c) = t.strip_suffix("*n") {
            aff.a += parse_uint(c)?;
        } else {
            aff.b += parse_uint(&t)?;
        }
    }
    Ok(aff)
}

fn parse_exp(s: &str) -> Result<ExpPoly, String> {
    let mut out = ExpPoly::default();
    for term in s.split('+') {
        let t: String = term.chars().filter(|c| !c.is_whitespace()).collect();
        let (coef, rest) = match t.split_once('*') {
            Some((c, r)) => (parse_uint(c)?, r.to_string()),
            None if t.contains('^') => (1, t.clone()),
            None => (parse_uint(&t)?, "1^n".to_string()),
        };
        let beta = rest
            .strip_suffix("^n")
            .ok_or_else(|| format!("expected `β^n`, got `{rest}`"))
            .and_then(parse_uint)?;
        if !(1..=3).contains(&beta) {
            return Err(format!("base {beta} outside 1..=3"));
        }
        if coef > 0 {
            out.terms.push((coef, beta as u32));
        }
    }
    Ok(out)
}

/// One line per generator: `x: star = n+1; der = 2*3^n + 1`.
pub fn parse_certificate(p: &Polygraph, text: &str) -> Result<InterpretationCert, PresentationError> {
    let mut cert = InterpretationCert::new(p);
    for (lno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| PresentationError::Syntax { line: lno + 1, col: 1, msg };
        let (name, body) = line.split_once(':').ok_or_else(|| err("expected `name: ...`".into()))?;
        let g = p
            .generator_id(name.trim())
            .ok_or_else(|| PresentationError::UnknownGenerator(name.trim().into()))?;
        let mut star = Affine::IDENTITY;
        let mut der = ExpPoly::default();
        for field in body.split(';') {
            let field = field.trim();
            if field.is_empty() {
                continue;
            }
            let (k, v) = field.split_once('=').ok_or_else(|| err(format!("expected `key = value` in `{field}`")))?;
            match k.trim() {
                "star" => star = parse_affine(v).map_err(err)?,
                "der" => der = parse_exp(v).map_err(err)?,
                other => return Err(err(format!("unknown field `{other}`"))),
            }
        }
        cert.set(g, star, der);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq_plain() -> Polygraph {
        Polygraph::monoid_from(
            &["a", "b", "t", "x", "y"],
            &[
                ("alpha0", "a b", "1"),
                ("alpha2", "a t t b", "1"),
                ("beta", "x a", "a t x"),
                ("gamma", "x t", "t x"),
                ("delta", "x b", "b x"),
                ("epsilon", "x y", "1"),
            ],
        )
        .unwrap()
    }

    const SQ: &str = "x: star = n+1; der = 0\na: der = 3^n\nb: der = 2^n\nt: der = 2^n\ny: der = 2^n\n";

    #[test]
    fn sq_certificate_passes() {
        let p = sq_plain();
        let cert = parse_certificate(&p, SQ).unwrap();
        let rep = check_interpretation_certificate(&p, &cert, 16, 0).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn zero_derivation_on_t_fails_on_gamma() {
        let p = sq_plain();
        let text = SQ.replace("t: der = 2^n", "t: der = 0");
        let cert = parse_certificate(&p, &text).unwrap();
        let rep = check_interpretation_certificate(&p, &cert, 16, 0).unwrap();
        assert_eq!(rep.verdict, CertVerdict::Fail { rule: "gamma".into(), n: 0, reason: "derivation 0 <= 0".into() });
    }

    #[test]
    fn sq_inequalities_by_hand() {
        let p = sq_plain();
        let cert = parse_certificate(&p, SQ).unwrap();
        for n in 0..10u64 {
            let pow = |b: u32, k: u64| BigUint::from(b).pow(k as u32);
            let xa = cert.eval(&p.parse_word("x a").unwrap(), n).unwrap();
            assert_eq!(xa.1, pow(3, n + 1));
            let atx = cert.eval(&p.parse_word("a t x").unwrap(), n).unwrap();
            assert_eq!(atx.1, pow(3, n) + pow(2, n));
            let xt = cert.eval(&p.parse_word("x t").unwrap(), n).unwrap();
            assert_eq!(xt.1, pow(2, n + 1));
            let xy = cert.eval(&p.parse_word("x y").unwrap(), n).unwrap();
            assert_eq!(xy.1, BigUint::from(2u32).pow(n as u32 + 1));
            assert_eq!(xy.0, n + 1);
        }
    }

    #[test]
    fn all_zero_derivation_fails_at_zero() {
        let p = sq_plain();
        let cert = parse_certificate(&p, "a:\nb:\nt:\nx: star = n+1\ny:\n").unwrap();
        let rep = check_interpretation_certificate(&p, &cert, 16, 0).unwrap();
        match rep.verdict {
            CertVerdict::Fail { n, .. } => assert_eq!(n, 0),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn incomplete_certificate_is_an_error() {
        let p = sq_plain();
        let cert = parse_certificate(&p, "a: der = 3^n").unwrap();
        assert!(check_interpretation_certificate(&p, &cert, 4, 0).is_err());
    }

    #[test]
    fn expression_grammar() {
        assert_eq!(parse_exp("2*3^n + 1 + 2^n").unwrap().terms, vec![(2, 3), (1, 1), (1, 2)]);
        assert!(parse_exp("4^n").is_err());
        assert_eq!(parse_affine("2*n + 3").unwrap(), Affine { a: 2, b: 3 });
    }
}
