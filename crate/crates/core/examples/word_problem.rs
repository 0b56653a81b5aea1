//! Decide equalities in the positive braid monoid on three strands.

use polygraphs::rewrite::{normalize, Strategy};
use polygraphs::{ConvergentPolygraph, Limits, Polygraph};

fn main() {
    let p = Polygraph::parse(include_str!("../data/b3plus.pg")).expect("valid presentation");
    let cp = ConvergentPolygraph::certify_deglex(p, Limits::default()).expect("convergent");
    let p = cp.polygraph();

    for (u, v) in [("s t s", "t s t"), ("s t", "t s"), ("s s t s", "s t s t")] {
        let (a, b) = (p.parse_word(u).unwrap(), p.parse_word(v).unwrap());
        let verdict = if cp.word_eq(&a, &b).unwrap() { "equal" } else { "different" };
        println!("{u} vs {v}: {verdict}");
    }

    let w = p.parse_word("t t s a s").unwrap();
    for s in [Strategy::Leftmost, Strategy::Rightmost] {
        let (nf, path) = normalize(p, &w, s, cp.limits()).unwrap();
        println!("{s:?}: {} in {} steps", p.show_word(&nf), path.len());
    }
}
