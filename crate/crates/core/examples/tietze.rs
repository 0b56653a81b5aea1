//! Tietze transformations between presentations of the braid monoid.

use polygraphs::presentation::{tietze_apply, TietzeMove};
use polygraphs::rewrite::{RewriteStep, ZigZag};
use polygraphs::{Polygraph, RuleRef};

fn main() {
    let braid = Polygraph::monoid_from(&["s", "t"], &[("r", "s t s", "t s t")]).unwrap();
    let st = braid.parse_word("s t").unwrap();
    let p = tietze_apply(&braid, &TietzeMove::AddGen { name: "a".into(), word: st, rule: "beta".into() }).unwrap();
    println!("{}\n", p.to_text());

    // the witness is one beta step on the first two letters
    let sts = p.parse_word("s t s").unwrap();
    let step = RewriteStep::at(&p, &sts, RuleRef::Plain(1), 0);
    let witness = ZigZag::step(&p, step);
    let q = tietze_apply(&p, &TietzeMove::AddRule { name: "gamma".into(), lhs: sts, rhs: p.parse_word("a s").unwrap(), witness }).unwrap();
    println!("{}\n", q.to_text());

    let back = tietze_apply(&p, &TietzeMove::RemoveGen { generator: "a".into(), rule: "beta".into() }).unwrap();
    assert_eq!(back, braid);
    println!("removing a again gives back the original presentation");
}
