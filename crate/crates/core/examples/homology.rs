//! The resolution of an idempotent monoid, its identities, and its matrices.

use polygraphs::coherence::squier_completion;
use polygraphs::homology::{enumerate_monoid, integer_matrices, show_module, verify_identities, Cell, Complex, ModuleElt};
use polygraphs::{ConvergentPolygraph, Limits, Polygraph};

fn main() {
    let p = Polygraph::parse(include_str!("../data/idempotent.pg")).unwrap();
    let cp = ConvergentPolygraph::certify_deglex(p, Limits::default()).unwrap();
    let coh = squier_completion(&cp);
    let cx = Complex::coherent(&coh).unwrap();
    let q = cx.polygraph();

    let mu = ModuleElt::term((cx.unit(), Cell::Rule(polygraphs::RuleRef::Plain(0))), 1);
    println!("d2[mu] = {}", show_module(q, &cx.d2(&mu).unwrap()));
    let a = ModuleElt::term((cx.unit(), Cell::Three(0)), 1);
    println!("d3[A] = {}", show_module(q, &cx.d3(&a).unwrap()));

    let elements = enumerate_monoid(&cx, 100).unwrap();
    let rep = verify_identities(&cx, &elements).unwrap();
    for c in &rep.checks {
        println!("{}: {}", c.key, c.status.as_str());
    }
    for m in integer_matrices(&cx, 100).unwrap() {
        print!("{}", m.render());
    }
}
