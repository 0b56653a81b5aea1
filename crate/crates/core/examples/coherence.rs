//! Squier completion of the completed xyx monoid, and filling a 2-sphere.

use polygraphs::coherence::squier_completion;
use polygraphs::completion::knuth_bendix;
use polygraphs::rewrite::{normalize, show_zigzag, DeglexOrder, Strategy};
use polygraphs::{ConvergentPolygraph, Limits, Polygraph};

fn main() {
    let p = Polygraph::parse(include_str!("../data/xyx.pg")).unwrap();
    let done = knuth_bendix(&p, &DeglexOrder::of(&p), 16, Limits::default()).unwrap();
    let cp = ConvergentPolygraph::certify_deglex(done.polygraph, Limits::default()).unwrap();
    let coh = squier_completion(&cp);
    let q = coh.polygraph();
    for c in q.three_cells() {
        println!("{}: {} === {}", c.name, show_zigzag(q, &c.source), show_zigzag(q, &c.target));
    }

    // two normalizations of the same word bound a sphere
    let w = q.parse_word("x y x y x y x").unwrap();
    let (_, f) = normalize(q, &w, Strategy::Leftmost, Limits::default()).unwrap();
    let (_, g) = normalize(q, &w, Strategy::Rightmost, Limits::default()).unwrap();
    let e = coh.fill_sphere(f.as_zigzag(), g.as_zigzag()).unwrap();
    println!("filler: {}", e.display(q));
    let (s, t) = coh.boundary(&e).unwrap();
    assert!(s == f.as_zigzag().reduced() && t == g.as_zigzag().reduced());
}
