//! Reduce a convergent presentation, recording the Tietze moves.

use polygraphs::completion::{is_reduced, metivier_squier_reduce};
use polygraphs::presentation::TietzeMove;
use polygraphs::{ConvergentPolygraph, Limits, Polygraph};

const TEXT: &str = "monoid
generators: a b
order: a < b
rules:
  mu: a a => a
  nu: a a a => a a
  xi: b a => a a
";

fn main() {
    let p = Polygraph::parse(TEXT).unwrap();
    for v in is_reduced(&p).violations {
        println!("not reduced: {v}");
    }
    let cp = ConvergentPolygraph::certify_deglex(p, Limits::default()).unwrap();
    let red = metivier_squier_reduce(&cp).unwrap();
    let q = red.result.polygraph();
    for m in &red.moves {
        match m {
            TietzeMove::AddRule { name, lhs, rhs, .. } => println!("add {name}: {} => {}", q.show_word(lhs), q.show_word(rhs)),
            TietzeMove::RemoveRule { rule, witness } => println!("remove {rule} (witness of {} steps)", witness.len()),
            other => println!("{other:?}"),
        }
    }
    println!("{}", q.to_text());
}
