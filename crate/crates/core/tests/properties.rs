mod common;

use common::*;
use polygraphs::coherence::boundary3;
use polygraphs::homology::{Complex, RingElt};
use polygraphs::rewrite::normalize;
use polygraphs::{Limits, Strategy, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn letters(n: usize, max: usize) -> impl proptest::strategy::Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..n, 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strategies_agree_on_b3plus(ls in letters(3, 12)) {
        let cp = deglex("b3plus.pg");
        let w = word(&ls);
        let (l, _) = normalize(cp.polygraph(), &w, Strategy::Leftmost, cp.limits()).unwrap();
        let (r, _) = normalize(cp.polygraph(), &w, Strategy::Rightmost, cp.limits()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn random_normalizations_end_at_the_normal_form(ls in letters(5, 10), seed in any::<u64>()) {
        let cp = sq(8);
        let p = cp.polygraph();
        let w = word(&ls);
        let path = random_normalization(p, &w, cp.limits(), &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(path.target(p).unwrap(), cp.normal_form(&w).unwrap());
    }

    #[test]
    fn fill_sphere_has_the_requested_boundary(ls in letters(2, 9), seed in any::<u64>()) {
        let (_, coh) = coherent_examples().remove(2);
        let p = coh.polygraph();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = word(&ls);
        let f = random_normalization(p, &w, Limits::default(), &mut rng).into_zigzag();
        let g = random_normalization(p, &w, Limits::default(), &mut rng).into_zigzag();
        let (s, t) = boundary3(p, &coh.fill_sphere(&f, &g).unwrap()).unwrap();
        prop_assert!(s.equivalent(&f));
        prop_assert!(t.equivalent(&g));
    }

    #[test]
    fn multiplication_is_associative(u in letters(3, 6), v in letters(3, 6), w in letters(3, 6)) {
        let cp = deglex("b3plus.pg");
        let cx = Complex::new(&cp).unwrap();
        let (u, v, w) = (cx.nf(&word(&u)).unwrap(), cx.nf(&word(&v)).unwrap(), cx.nf(&word(&w)).unwrap());
        let left = cx.mult(&cx.mult(&u, &v).unwrap(), &w).unwrap();
        let right = cx.mult(&u, &cx.mult(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn d1_of_fox_is_word_minus_one(ls in letters(2, 10)) {
        let (_, coh) = coherent_examples().remove(2);
        let cx = Complex::coherent(&coh).unwrap();
        let w = word(&ls);
        let expected = RingElt::term(cx.nf(&w).unwrap(), 1) - RingElt::term(Word::monoid(&[]), 1);
        prop_assert_eq!(cx.d1(&cx.fox(&w).unwrap()).unwrap(), expected);
    }

    #[test]
    fn contractions_split_the_resolution(ls in letters(3, 8)) {
        let (_, coh) = coherent_examples().remove(1);
        let cx = Complex::coherent(&coh).unwrap();
        let u = cx.nf(&word(&ls)).unwrap();
        let rep = polygraphs::homology::verify_identities(&cx, &[u]).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep);
    }
}
