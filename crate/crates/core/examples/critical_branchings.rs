//! Critical branchings and their resolutions.

use polygraphs::branchings::{enumerate_critical_branchings, resolve_branching, ResolutionOutcome};
use polygraphs::rewrite::{show_step, show_zigzag, Strategy};
use polygraphs::{Limits, Polygraph};

fn report(title: &str, text: &str) {
    let p = Polygraph::parse(text).unwrap();
    let rep = enumerate_critical_branchings(&p, 0);
    println!("{title}: {} critical branchings", rep.branchings.len());
    for b in &rep.branchings {
        println!("  on {}: {} | {}", p.show_word(&b.source), show_step(&p, &b.first), show_step(&p, &b.second));
        match resolve_branching(&p, b, Strategy::Leftmost, Limits::default()) {
            ResolutionOutcome::Confluent(r) => {
                println!("    joins at {}", p.show_word(&r.join));
                println!("    f' = {}", show_zigzag(&p, r.f_prime.as_zigzag()));
                println!("    g' = {}", show_zigzag(&p, r.g_prime.as_zigzag()));
            }
            ResolutionOutcome::NotConfluent { first_nf, second_nf } => {
                println!("    not confluent: {} / {}", p.show_word(&first_nf), p.show_word(&second_nf))
            }
            ResolutionOutcome::Unknown => println!("    ran out of fuel"),
        }
    }
}

fn main() {
    report("B3+", include_str!("../data/b3plus.pg"));
    report("xyx", include_str!("../data/xyx.pg"));
}
