use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{show_module, show_ring, Cell, Complex, HomologyError, ModuleElt, MonoidElt, RingElt};
use crate::presentation::Word;

pub const IDENTITY_KEYS: [&str; 6] = ["eps_i0", "d1d2", "d2d3", "d1i1_i0eps", "d2i2_i1d1", "d3i3_i2d2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Ok,
    Fail,
    /// Degree 3 checks without 3-cells or without a Squier completion.
    Skipped,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Ok => "ok",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub key: &'static str,
    pub status: CheckStatus,
    pub checked: usize,
    pub failures: usize,
    /// The first failing basis element with both sides.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub samples: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn get(&self, key: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.key == key)
    }
}

struct Tally {
    check: IdentityCheck,
}

impl Tally {
    fn new(key: &'static str) -> Tally {
        Tally { check: IdentityCheck { key, status: CheckStatus::Ok, checked: 0, failures: 0, witness: None } }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.check.checked += 1;
        if !ok {
            self.check.failures += 1;
            self.check.status = CheckStatus::Fail;
            if self.check.witness.is_none() {
                self.check.witness = Some(witness());
            }
        }
    }

    fn skip(mut self) -> IdentityCheck {
        self.check.status = CheckStatus::Skipped;
        self.check
    }
}

/// Check the chain conditions and `d i + i d = Id` on every `u[x]` with `u` in `samples`.
pub fn verify_identities(cx: &Complex<'_>, samples: &[MonoidElt]) -> Result<IdentityReport, HomologyError> {
    let p = cx.polygraph();
    let elts: Vec<MonoidElt> = samples.iter().map(|u| cx.nf(u)).collect::<Result<_, _>>()?;
    let show_basis = |u: &Word, x: Cell| show_module(p, &ModuleElt::term((u.clone(), x), 1));
    let mut checks = Vec::new();

    let mut t = Tally::new("eps_i0");
    let one = BigInt::one();
    let got = cx.epsilon(&cx.i0(&one));
    t.record(got == one, || format!("eps(i0(1)) = {got}"));
    checks.push(t.check);

    let mut t = Tally::new("d1d2");
    for u in &elts {
        for x in cx.basis(2) {
            let v = cx.d1(&cx.d2(&ModuleElt::term((u.clone(), x), 1))?)?;
            t.record(v.is_zero(), || format!("d1(d2({})) = {}", show_basis(u, x), show_ring(p, &v)));
        }
    }
    checks.push(t.check);

    let mut t = Tally::new("d2d3");
    if cx.basis(3).is_empty() {
        checks.push(t.skip());
    } else {
        for u in &elts {
            for x in cx.basis(3) {
                let v = cx.d2(&cx.d3(&ModuleElt::term((u.clone(), x), 1))?)?;
                t.record(v.is_zero(), || format!("d2(d3({})) = {}", show_basis(u, x), show_module(p, &v)));
            }
        }
        checks.push(t.check);
    }

    let mut t = Tally::new("d1i1_i0eps");
    for u in &elts {
        let r = RingElt::term(u.clone(), 1);
        let v = cx.d1(&cx.i1(&r)?)? + cx.i0(&cx.epsilon(&r));
        t.record(v == r, || format!("at {}: got {}", show_ring(p, &r), show_ring(p, &v)));
    }
    checks.push(t.check);

    let mut t = Tally::new("d2i2_i1d1");
    for u in &elts {
        for x in cx.basis(1) {
            let m = ModuleElt::term((u.clone(), x), 1);
            let v = cx.d2(&cx.i2(&m)?)? + cx.i1(&cx.d1(&m)?)?;
            t.record(v == m, || format!("at {}: got {}", show_module(p, &m), show_module(p, &v)));
        }
    }
    checks.push(t.check);

    let mut t = Tally::new("d3i3_i2d2");
    if !cx.has_contraction3() {
        checks.push(t.skip());
    } else {
        for u in &elts {
            for x in cx.basis(2) {
                let m = ModuleElt::term((u.clone(), x), 1);
                let v = cx.d3(&cx.i3(&m)?)? + cx.i2(&cx.d2(&m)?)?;
                t.record(v == m, || format!("at {}: got {}", show_module(p, &m), show_module(p, &v)));
            }
        }
        checks.push(t.check);
    }
    Ok(IdentityReport { samples: elts.len(), checks })
}

/// Up to `count` distinct normal forms of random words of length at most `max_len`.
pub fn sample_normal_forms(cx: &Complex<'_>, count: usize, max_len: usize, seed: u64) -> Result<Vec<MonoidElt>, HomologyError> {
    let n = cx.presentation().polygraph().generators().len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    if n == 0 {
        return Ok(vec![cx.unit()]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while out.len() < count && attempts < count * 50 {
        attempts += 1;
        let len = rng.gen_range(0..=max_len);
        let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let w = cx.nf(&Word::monoid(&letters))?;
        if seen.insert(w.clone()) {
            out.push(w);
        }
    }
    Ok(out)
}
