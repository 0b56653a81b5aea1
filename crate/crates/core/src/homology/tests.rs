use num_bigint::BigInt;

use super::*;
use crate::coherence::squier_completion;
use crate::rewrite::{Limits, RewriteStep};
use crate::RuleRef;

fn idempotent() -> ConvergentPolygraph {
    ConvergentPolygraph::certify_deglex(Polygraph::monoid_from(&["a"], &[("mu", "a a", "a")]).unwrap(), Limits::default()).unwrap()
}

fn b3() -> ConvergentPolygraph {
    let mut p = Polygraph::monoid_from(
        &["s", "t", "a"],
        &[("alpha", "t a", "a s"), ("beta", "s t", "a"), ("gamma", "s a s", "a a"), ("delta", "s a a", "a a t")],
    )
    .unwrap();
    p.set_order(&["a", "s", "t"]).unwrap();
    ConvergentPolygraph::certify_deglex(p, Limits::default()).unwrap()
}

fn xyx() -> ConvergentPolygraph {
    let p = Polygraph::monoid_from(&["x", "y"], &[("alpha", "x y x", "y y"), ("beta", "y y y x", "x y y y")]).unwrap();
    ConvergentPolygraph::certify_deglex(p, Limits::default()).unwrap()
}

fn w(cp: &ConvergentPolygraph, s: &str) -> Word {
    cp.polygraph().parse_word(s).unwrap()
}

fn mu() -> Cell {
    Cell::Rule(RuleRef::Plain(0))
}

#[test]
fn ring_arithmetic() {
    let cp = b3();
    let cx = Complex::new(&cp).unwrap();
    assert_eq!(cx.mult(&w(&cp, "s"), &w(&cp, "t")).unwrap(), w(&cp, "a"));
    assert_eq!(cx.mult(&cx.unit(), &w(&cp, "a s")).unwrap(), w(&cp, "a s"));
    let r = RingElt::term(w(&cp, "a"), 3) - RingElt::term(w(&cp, "s"), 2);
    assert_eq!(cx.epsilon(&r), BigInt::from(1));
    assert_eq!(cx.epsilon(&RingElt::zero()), BigInt::from(0));
    assert_eq!(cx.epsilon(&cx.i0(&BigInt::from(1))), BigInt::from(1));
    let st = RingElt::term(w(&cp, "s"), 1);
    let t = RingElt::term(w(&cp, "t"), 1);
    assert_eq!(cx.ring_mul(&st, &t).unwrap(), RingElt::term(w(&cp, "a"), 1));
}

#[test]
fn idempotent_boundaries() {
    let cp = idempotent();
    let cx = Complex::new(&cp).unwrap();
    let a = w(&cp, "a");
    let one = cx.unit();
    let gen = Cell::Gen(0);
    assert!(cx.fox(&one).unwrap().is_zero());
    let expected = ModuleElt::term((one.clone(), gen), 1) + ModuleElt::term((a.clone(), gen), 2);
    assert_eq!(cx.fox(&w(&cp, "a a a")).unwrap(), expected);
    let d1 = cx.d1(&ModuleElt::term((one.clone(), gen), 1)).unwrap();
    assert_eq!(d1, RingElt::term(a.clone(), 1) - RingElt::term(one.clone(), 1));
    assert_eq!(show_ring(cp.polygraph(), &d1), "-1 + a");
    let d2 = cx.d2(&ModuleElt::term((one.clone(), mu()), 1)).unwrap();
    assert_eq!(d2, ModuleElt::term((a.clone(), gen), 1));
    // i2(a[a]) is the single step aa => a
    assert_eq!(cx.i2(&ModuleElt::term((a.clone(), gen), 1)).unwrap(), ModuleElt::term((one.clone(), mu()), 1));
    assert_eq!(cx.i1(&RingElt::term(a.clone(), 1)).unwrap(), cx.fox(&a).unwrap());
}

#[test]
fn idempotent_three_cell() {
    let cp = idempotent();
    let coh = squier_completion(&cp);
    let cx = Complex::coherent(&coh).unwrap();
    let a = w(&cp, "a");
    let d3 = cx.d3(&ModuleElt::term((cx.unit(), Cell::Three(0)), 1)).unwrap();
    assert_eq!(d3, ModuleElt::term((a, mu()), 1) - ModuleElt::term((cx.unit(), mu()), 1));
    assert_eq!(show_module(cx.polygraph(), &d3), "-[mu] + a[mu]");
    assert_eq!(enumerate_monoid(&cx, 10).unwrap().len(), 2);
    let m = integer_matrices(&cx, 10).unwrap();
    let d3m = &m[2];
    assert_eq!(d3m.rows, vec!["1[mu]", "a[mu]"]);
    assert_eq!(d3m.cols, vec!["1[A]", "a[A]"]);
    let ints = |v: &[&[i64]]| v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()).collect::<Vec<_>>();
    assert_eq!(d3m.entries, ints(&[&[-1, 0], &[1, 0]]));
    assert!(m[0].mul(&m[1]).unwrap().is_zero());
    assert!(m[1].mul(&m[2]).unwrap().is_zero());
}

#[test]
fn bracket_of_paths_and_composites() {
    let cp = idempotent();
    let coh = squier_completion(&cp);
    let cx = Complex::coherent(&coh).unwrap();
    let p = cp.polygraph();
    let aa = w(&cp, "a a");
    assert!(cx.bracket2(&ZigZag::identity(aa.clone())).unwrap().is_zero());
    let s = RewriteStep::at(p, &w(&cp, "a a a"), RuleRef::Plain(0), 1);
    let z = ZigZag::step(p, s.clone());
    assert_eq!(cx.bracket2(&z).unwrap(), ModuleElt::term((w(&cp, "a"), mu()), 1));
    let back = z.then(&z.inverse(p).unwrap());
    assert!(cx.bracket2(&back).unwrap().is_zero());

    let a = ThreeCellExpr::Gen(0);
    assert_eq!(cx.bracket3(&a).unwrap(), ModuleElt::term((cx.unit(), Cell::Three(0)), 1));
    assert!(cx.bracket3(&a.clone().comp2(a.clone().inv())).unwrap().is_zero());
    let wh = a.clone().whisker(w(&cp, "a a"), w(&cp, "a"));
    assert_eq!(cx.bracket3(&wh).unwrap(), ModuleElt::term((w(&cp, "a"), Cell::Three(0)), 1));
    assert!(cx.bracket3(&a.clone().comp2(a)).is_err());
}

#[test]
fn chain_conditions_on_completed_xyx() {
    let cp = xyx();
    let coh = squier_completion(&cp);
    let cx = Complex::coherent(&coh).unwrap();
    for x in cx.basis(3) {
        let d = cx.d3(&ModuleElt::term((cx.unit(), x), 1)).unwrap();
        assert!(!d.is_zero());
        assert!(cx.d2(&d).unwrap().is_zero());
    }
}

#[test]
fn identities_hold() {
    let cp = idempotent();
    let coh = squier_completion(&cp);
    let cx = Complex::coherent(&coh).unwrap();
    let all = enumerate_monoid(&cx, 10).unwrap();
    let r = verify_identities(&cx, &all).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.checks.iter().map(|c| c.key).collect::<Vec<_>>(), IDENTITY_KEYS);
    assert!(r.checks.iter().all(|c| c.status == CheckStatus::Ok));

    for cp in [b3(), xyx()] {
        let coh = squier_completion(&cp);
        let cx = Complex::coherent(&coh).unwrap();
        let samples = sample_normal_forms(&cx, 50, 12, 7).unwrap();
        assert_eq!(samples.len(), 50);
        let r = verify_identities(&cx, &samples).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn degree_three_skipped_without_cells() {
    let cp = b3();
    let cx = Complex::new(&cp).unwrap();
    let r = verify_identities(&cx, &[cx.unit()]).unwrap();
    assert!(r.passed());
    assert_eq!(r.get("d2d3").unwrap().status, CheckStatus::Skipped);
    assert_eq!(r.get("d3i3_i2d2").unwrap().status, CheckStatus::Skipped);
}

#[test]
fn mutations_are_caught() {
    let cp = idempotent();
    let coh = squier_completion(&cp);
    let base = Complex::coherent(&coh).unwrap();
    let all = enumerate_monoid(&base, 10).unwrap();
    for (map, key) in [
        (BoundaryMap::Epsilon, "eps_i0"),
        (BoundaryMap::D1, "d1i1_i0eps"),
        (BoundaryMap::D2, "d2i2_i1d1"),
        (BoundaryMap::D3, "d3i3_i2d2"),
    ] {
        let cx = base.mutated(Mutation { map, cell: None });
        let r = verify_identities(&cx, &all).unwrap();
        assert!(!r.passed());
        let c = r.get(key).unwrap();
        assert_eq!(c.status, CheckStatus::Fail, "{map:?}");
        assert!(c.witness.is_some());
    }
}

#[test]
fn matrices_need_a_finite_monoid() {
    let cp = b3();
    let cx = Complex::new(&cp).unwrap();
    assert_eq!(integer_matrices(&cx, 10), Err(HomologyError::BoundExceeded(10)));
    let sym = symbolic_matrices(&cx).unwrap();
    assert_eq!(sym[1].entries.len(), 3);
    assert_eq!(sym[1].cols.len(), 4);

    let trivial = ConvergentPolygraph::certify_deglex(Polygraph::monoid(), Limits::default()).unwrap();
    let cx = Complex::new(&trivial).unwrap();
    let m = integer_matrices(&cx, 10).unwrap();
    assert_eq!((m[0].nrows(), m[0].ncols()), (1, 0));
    assert_eq!((m[1].nrows(), m[1].ncols()), (0, 0));
}

#[test]
fn symbolic_rendering() {
    let cp = idempotent();
    let cx = Complex::new(&cp).unwrap();
    let sym = symbolic_matrices(&cx).unwrap();
    assert_eq!(sym[0].render(cp.polygraph()), "symbolic d1 1 x 1\nrows: 1\ncols: a\n-1*1 + 1*a\n");
    assert_eq!(sym[1].render(cp.polygraph()), "symbolic d2 1 x 1\nrows: a\ncols: mu\n1*a\n");
}
