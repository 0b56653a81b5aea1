//! The standard coherent presentation of a finite monoid.

use polygraphs::coherence::{parse_table, standard_coherent_presentation};

fn main() {
    for text in [include_str!("../data/two.table"), include_str!("../data/z3.table")] {
        let m = parse_table(text).unwrap();
        let p = standard_coherent_presentation(&m).unwrap();
        println!(
            "{} elements: {} generators, {} rules, {} 3-cells",
            m.elements.len(),
            p.generators().len(),
            p.rules().len(),
            p.three_cells().len()
        );
    }
    let p = standard_coherent_presentation(&parse_table(include_str!("../data/two.table")).unwrap()).unwrap();
    println!("{}", p.to_text());
}
