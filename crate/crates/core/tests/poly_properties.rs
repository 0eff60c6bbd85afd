use num_bigint::BigInt;
use proptest::prelude::*;
use treeperc::{BivarPoly, Term, UniPoly};

fn small_poly() -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec((0u32..6, 0u32..8, -20i64..20), 0..12)
        .prop_map(|v| BivarPoly::from_terms(v.into_iter().map(|(x, t, c)| Term::new(x, t, c))))
}

fn wide_poly(len: usize) -> impl Strategy<Value = BivarPoly> {
    // coefficients up to ~190 bits so that several primes are needed
    prop::collection::vec(
        (0u32..40, 0u32..60, any::<i64>(), any::<u64>(), any::<u64>()),
        len..len + 20,
    )
    .prop_map(|v| {
        BivarPoly::from_terms(v.into_iter().map(|(x, t, a, b, c)| {
            let coeff = (BigInt::from(a) << 128) + (BigInt::from(b) << 64) + BigInt::from(c);
            Term::new(x, t, coeff)
        }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&BivarPoly::one()), a.clone());
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.add(&a.neg()), BivarPoly::zero());
    }

    #[test]
    fn negate_x_is_involution(a in small_poly()) {
        prop_assert_eq!(a.negate_x().negate_x(), a.clone());
        prop_assert_eq!(a.negate_x().eval_x1().reflect().reflect(), a.negate_x().eval_x1());
    }

    #[test]
    fn truncated_power_matches_full(a in small_poly(), e in 0u32..5, m in 0u32..8) {
        let full = a.pow(e, None);
        prop_assert_eq!(a.pow(e, Some(m)), full.truncate_x(m));
        let mut naive = BivarPoly::one();
        for _ in 0..e {
            naive = naive.mul_schoolbook(&a);
        }
        prop_assert_eq!(full, naive);
    }

    #[test]
    fn eval_x1_is_a_ring_map(a in small_poly(), b in small_poly()) {
        prop_assert_eq!(a.mul(&b).eval_x1(), a.eval_x1().mul(&b.eval_x1()));
        prop_assert_eq!(a.add(&b).eval_x1(), a.eval_x1().add(&b.eval_x1()));
    }

    #[test]
    fn json_round_trip(a in small_poly()) {
        prop_assert_eq!(BivarPoly::from_json(&a.to_json()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn modular_product_matches_schoolbook(a in wide_poly(140), b in wide_poly(140)) {
        prop_assume!(a.len() * b.len() > 16_384);
        prop_assert_eq!(a.mul(&b), a.mul_schoolbook(&b));
        prop_assert_eq!(a.square(), a.mul_schoolbook(&a));
    }

    #[test]
    fn modular_truncated_product(a in wide_poly(140), b in wide_poly(140), m in 0u32..60) {
        prop_assert_eq!(a.mul_truncated(&b, Some(m)), a.mul_schoolbook(&b).truncate_x(m));
    }
}

#[test]
fn reflect_evaluates_at_complement() {
    let u = UniPoly::from_small(&[(0, 3), (2, -5), (7, 1)]);
    let p = treeperc::parse_rational("2/7").unwrap();
    let q = treeperc::parse_rational("5/7").unwrap();
    assert_eq!(u.reflect().eval_rational(&p), u.eval_rational(&q));
}
