use proptest::prelude::*;
use treeperc::oracle::{alexander_dual, multigraded_betti_homology, taylor_numerator, MonomialSet};
use treeperc::resolution::{gf_to_numerator, BettiTable};
use treeperc::{parse_rational, ExactRational};

const VARS: usize = 7;

/// Random clutter on `VARS` variables: nonempty masks with no containments.
fn clutter() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..(1 << VARS), 1..7).prop_map(|mut masks| {
        masks.sort_by_key(|m| (m.count_ones(), *m));
        masks.dedup();
        let mut kept: Vec<u64> = Vec::new();
        for m in masks {
            if !kept.iter().any(|k| k & m == *k) {
                kept.push(m);
            }
        }
        kept
    })
}

fn monomial_set(masks: &[u64]) -> MonomialSet {
    let names: Vec<String> = (1..=VARS).map(|i| format!("z{i}")).collect();
    let gens: Vec<Vec<usize>> = masks
        .iter()
        .map(|m| (0..VARS).filter(|v| m >> v & 1 == 1).collect())
        .collect();
    MonomialSet::new(names, &gens).unwrap()
}

/// Probability that some generator has all its variables set, each
/// variable independently with probability `p`.
fn hit_probability(masks: &[u64], p: &ExactRational) -> ExactRational {
    let one = ExactRational::from_integer(1.into());
    let mut total = ExactRational::from_integer(0.into());
    for state in 0u64..(1 << VARS) {
        if masks.iter().any(|g| state & g == *g) {
            let on = state.count_ones() as usize;
            total += num_traits::pow(p.clone(), on) * num_traits::pow(&one - p, VARS - on);
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_is_an_involution(masks in clutter()) {
        let ideal = monomial_set(&masks);
        let dual = alexander_dual(&ideal).unwrap();
        prop_assert_eq!(alexander_dual(&dual).unwrap(), ideal);
    }

    #[test]
    fn taylor_numerator_counts_hits(masks in clutter()) {
        let h = taylor_numerator(&monomial_set(&masks)).unwrap().into_poly().eval_x1();
        for p in ["1/3", "3/4"] {
            let p = parse_rational(p).unwrap();
            prop_assert_eq!(h.eval_rational(&p), hit_probability(&masks, &p));
        }
    }

    #[test]
    fn homology_table_is_a_minimal_resolution(masks in clutter()) {
        let ideal = monomial_set(&masks);
        let table: BettiTable = multigraded_betti_homology(&ideal).unwrap();
        // same Hilbert series as the Taylor complex, never larger
        let minimal = gf_to_numerator(&table.to_gf()).into_poly();
        let taylor = taylor_numerator(&ideal).unwrap().into_poly();
        prop_assert_eq!(minimal.eval_x1(), taylor.eval_x1());
        prop_assert_eq!(table.get(1, 0), 0u32.into());
        let gens = table.iter().filter(|(i, _, _)| *i == 1).map(|(_, _, b)| b.clone()).sum::<num_bigint::BigUint>();
        prop_assert_eq!(gens, masks.len().into());
        let taylor_size: usize = 1 << masks.len();
        let total: num_bigint::BigUint = table.totals().into_iter().sum();
        prop_assert!(total <= taylor_size.into());
    }
}
