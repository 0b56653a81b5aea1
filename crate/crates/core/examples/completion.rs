//! Knuth-Bendix completion: one that stops and one that does not.

use polygraphs::completion::{knuth_bendix, CompletionStatus};
use polygraphs::rewrite::DeglexOrder;
use polygraphs::{Limits, Polygraph, RuleRef};

fn run(text: &str, max_rules: usize) {
    let p = Polygraph::parse(text).unwrap();
    let res = knuth_bendix(&p, &DeglexOrder::of(&p), max_rules, Limits::default()).unwrap();
    for &k in &res.added {
        println!("  added {}", res.polygraph.show_rule(RuleRef::Plain(k)));
    }
    match res.status {
        CompletionStatus::Completed => println!("  completed with {} rules", res.polygraph.rules().len()),
        CompletionStatus::FuelExhausted => println!("  stopped at {max_rules} rules; the rules a c^n b => a c^n keep coming"),
    }
}

fn main() {
    println!("xyx:");
    run(include_str!("../data/xyx.pg"), 16);
    println!("lp:");
    run(include_str!("../data/lp.pg"), 8);
}
