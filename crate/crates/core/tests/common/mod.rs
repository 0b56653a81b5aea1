#![allow(dead_code)]

use polygraphs::coherence::{squier_completion, CoherentPresentation};
use polygraphs::completion::knuth_bendix;
use polygraphs::rewrite::{check_interpretation_certificate, find_redexes, parse_certificate, DeglexOrder, RewriteStep};
use polygraphs::{ConvergentPolygraph, Limits, Polygraph, TerminationEvidence, TwoCellPath, Word};
use rand::Rng;

pub fn data(name: &str) -> String {
    let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn data_path(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn load(name: &str) -> Polygraph {
    Polygraph::parse(&data(name)).unwrap()
}

pub fn deglex(name: &str) -> ConvergentPolygraph {
    ConvergentPolygraph::certify_deglex(load(name), Limits::default()).unwrap()
}

pub fn xyx_completed() -> ConvergentPolygraph {
    let p = load("xyx.pg");
    let res = knuth_bendix(&p, &DeglexOrder::of(&p), 16, Limits::default()).unwrap();
    ConvergentPolygraph::certify_deglex(res.polygraph, Limits::default()).unwrap()
}

pub fn sq(pump_bound: u32) -> ConvergentPolygraph {
    let p = load("sq.pg");
    let cert = parse_certificate(&p, &data("sq.cert")).unwrap();
    let report = check_interpretation_certificate(&p, &cert, 16, pump_bound).unwrap();
    let ev = TerminationEvidence::Sampled { report, acknowledged: true };
    ConvergentPolygraph::certify(p, &ev, Limits::with_pump_bound(pump_bound)).unwrap()
}

/// The three finite-rule convergent examples with their Squier completions.
pub fn coherent_examples() -> Vec<(&'static str, CoherentPresentation)> {
    vec![
        ("idempotent", squier_completion(&deglex("idempotent.pg"))),
        ("b3plus", squier_completion(&deglex("b3plus.pg"))),
        ("xyx", squier_completion(&xyx_completed())),
    ]
}

/// Rewrite `w` to its normal form, choosing a redex uniformly at each step.
pub fn random_normalization(p: &Polygraph, w: &Word, limits: Limits, rng: &mut impl Rng) -> TwoCellPath {
    let mut cur = w.clone();
    let mut path = TwoCellPath::identity(w.clone());
    for _ in 0..limits.fuel {
        let rs = find_redexes(p, &cur, limits.bound_for(&cur));
        if rs.is_empty() {
            return path;
        }
        let r = rs[rng.gen_range(0..rs.len())];
        let step = RewriteStep::at(p, &cur, r.rule, r.position);
        cur = step.target(p);
        path.push(step);
    }
    panic!("no normal form reached from {}", p.show_word(w));
}

pub fn word(letters: &[usize]) -> Word {
    Word::monoid(letters)
}
