//! Randomized algebraic properties over generated inputs, complementing
//! the fixed-seed acceptance gate.

use proptest::prelude::*;

use artin_depth::arith::{iota_substitute, rat_int, LaurentQT, Valuation};
use artin_depth::coxeter::{is_pure, word_to_w, ArtinWord, RootSystem, TypeId};
use artin_depth::folding::{braid_minimality_probe, foldings_from, transport_pure};
use artin_depth::lkb::rep_for;
use artin_depth::nilpotence::certify;

fn letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<(usize, i8)>> {
    prop::collection::vec(
        (1..=rank, prop::bool::ANY.prop_map(|b| if b { 1i8 } else { -1 })),
        0..=max_len,
    )
}

fn laurent() -> impl Strategy<Value = LaurentQT> {
    prop::collection::vec((-4i64..=4, (-2i64..=3, -2i64..=3)), 0..=5).prop_map(|terms| {
        let mut p = LaurentQT::zero();
        for (c, (eq, et)) in terms {
            p = &p + &LaurentQT::monomial(rat_int(c), eq, et);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projection_is_a_homomorphism(u in letters(3, 10), v in letters(3, 10)) {
        let t = TypeId::A(3);
        let rs = RootSystem::new(t).unwrap();
        let wu = ArtinWord::new(t, u).unwrap();
        let wv = ArtinWord::new(t, v).unwrap();
        let lhs = word_to_w(&rs, &wu.concat(&wv));
        let rhs = word_to_w(&rs, &wu).compose(&word_to_w(&rs, &wv));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncated_evaluation_is_a_homomorphism(u in letters(2, 8), v in letters(2, 8)) {
        let t = TypeId::A(2);
        let rep = rep_for(t).unwrap();
        let wu = ArtinWord::new(t, u).unwrap();
        let wv = ArtinWord::new(t, v).unwrap();
        let lhs = rep.eval_word_truncated(&wu.concat(&wv), 3).unwrap();
        let rhs = rep
            .eval_word_truncated(&wu, 3)
            .unwrap()
            .mul(&rep.eval_word_truncated(&wv, 3).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_evaluation_respects_inverses(u in letters(2, 8)) {
        let t = TypeId::A(2);
        let rep = rep_for(t).unwrap();
        let w = ArtinWord::new(t, u).unwrap();
        let prod = rep
            .eval_word_exact(&w)
            .unwrap()
            .mul(&rep.eval_word_exact(&w.inverse()).unwrap());
        let id = artin_depth::arith::SparseMat::identity(rep.dimension(), LaurentQT::one());
        prop_assert_eq!(prod, id);
    }

    #[test]
    fn iota_is_multiplicative(p in laurent(), r in laurent()) {
        for k in [0usize, 3, 6] {
            let lhs = iota_substitute(&(&p * &r), k);
            let rhs = &iota_substitute(&p, k) * &iota_substitute(&r, k);
            prop_assert_eq!(lhs, rhs, "K = {}", k);
        }
    }

    #[test]
    fn transport_preserves_purity(u in letters(3, 6), i in 1usize..=3) {
        let t = TypeId::H3;
        let conj = ArtinWord::new(t, u).unwrap();
        let sq = ArtinWord::new(t, vec![(i, 1), (i, 1)]).unwrap();
        let w = sq.conjugate_by(&conj);
        let vf = foldings_from(t).remove(0).verify_w().unwrap();
        let img = transport_pure(&vf, &w).unwrap();
        let target_rs = RootSystem::new(img.type_id()).unwrap();
        prop_assert!(is_pure(&target_rs, &img));
    }

    #[test]
    fn certificates_are_monotone_in_the_order(u in letters(2, 5), i in 1usize..=2) {
        let t = TypeId::A(2);
        let conj = ArtinWord::new(t, u).unwrap();
        let sq = ArtinWord::new(t, vec![(i, 1), (i, 1)]).unwrap();
        let w = sq.conjugate_by(&conj);
        let low = certify(&w, 2).unwrap().valuation;
        let high = certify(&w, 5).unwrap().valuation;
        match (low, high) {
            (Valuation::At(a), Valuation::At(b)) => prop_assert_eq!(a, b),
            (Valuation::Above(k), Valuation::At(b)) => prop_assert!(b > k),
            (Valuation::Above(_), Valuation::Above(k)) => prop_assert_eq!(k, 5),
            (Valuation::At(_), Valuation::Above(_)) => prop_assert!(false, "valuation lost"),
        }
    }
}

#[test]
fn i2_relations_hold_at_m_and_at_no_smaller_order() {
    for m in 5..=12 {
        let probe = braid_minimality_probe(m);
        assert_eq!(probe, m, "I2({}) images satisfy an order-{} relation", m, probe);
    }
}
