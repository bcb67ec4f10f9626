use lrc_core::mirror::BModElement;
use lrc_core::rat::{rq, Rat};
use lrc_core::series::RatSeries;
use lrc_core::Var;
use proptest::prelude::*;

fn series(start: i64, order: i64) -> impl Strategy<Value = RatSeries> {
    let n = (order - start + 1) as usize;
    proptest::collection::vec((-9i64..=9, 1i64..=4), n).prop_map(move |cs| {
        let coeffs: Vec<Rat> = cs.into_iter().map(|(p, q)| rq(p, q)).collect();
        RatSeries::from_coeffs(Var::SmallQ, start, coeffs, order)
    })
}

fn bmod() -> impl Strategy<Value = BModElement> {
    proptest::collection::vec((-5i64..=5, 0i32..=3, 0i32..=3), 1..5).prop_map(|ts| {
        let terms: Vec<(Rat, i32, i32)> = ts.into_iter().map(|(c, s, x)| (rq(c, 7), s, x)).collect();
        BModElement::from_terms(0, &terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_distributes(a in series(0, 8), b in series(0, 8), c in series(0, 8)) {
        let l = (&a * &(&b + &c)).truncate(8);
        let r = (&(&a * &b) + &(&a * &c)).truncate(8);
        prop_assert_eq!(l, r);
    }

    #[test]
    fn inverse_is_two_sided(mut a in series(0, 8)) {
        if a.coeff(0) == Rat::from_integer(0.into()) {
            a = &a + &RatSeries::one(Var::SmallQ, 8);
        }
        let inv = a.inverse().unwrap();
        prop_assert!((&a * &inv).agrees_to(&RatSeries::one(Var::SmallQ, 8), 8));
    }

    #[test]
    fn exp_and_log_invert(a in series(1, 8)) {
        let e = a.exp().unwrap();
        prop_assert!(e.log().unwrap().agrees_to(&a, 8));
    }

    #[test]
    fn reversion_composes_to_identity(a in series(2, 8)) {
        let f = &RatSeries::monomial(Var::SmallQ, Rat::from_integer(1.into()), 1, 8) + &a;
        let g = f.revert().unwrap();
        let id = f.compose(&g.with_var(Var::SmallQ)).unwrap();
        prop_assert!(id.agrees_to(&RatSeries::monomial(Var::SmallQ, Rat::from_integer(1.into()), 1, 8), 8));
    }

    #[test]
    fn d_is_a_derivation(a in bmod(), b in bmod()) {
        let lhs = a.mul(&b).derive_d();
        let rhs = a.derive_d().mul(&b).checked_add(&a.mul(&b.derive_d())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn qmod_round_trip(a in bmod()) {
        // Degree-zero elements with X-degree at least S-degree are regular at the orbifold point.
        let m = a.mul(&BModElement::monomial(Rat::from_integer(1.into()), 0, 3, 0));
        let q = m.to_qmod().unwrap();
        prop_assert_eq!(BModElement::from_qmod(&q).unwrap(), m);
    }
}
