//! The design distance of every extracted subcode, and of every nested
//! selection, is a lower bound on its exhaustive minimum distance.

use std::sync::Arc;

use alternant::oracle::{self, DEFAULT_LIMIT};
use alternant::{extract_subfield_subcode, ExtensionCtx, GrsCode, NestedFamily, SmallField};
use proptest::prelude::*;

fn f8() -> Arc<ExtensionCtx> {
    let f2 = Arc::new(SmallField::prime(2).unwrap());
    Arc::new(ExtensionCtx::from_coeffs(f2, &[1, 1, 0, 1]).unwrap())
}

fn f9() -> Arc<ExtensionCtx> {
    let f3 = Arc::new(SmallField::prime(3).unwrap());
    Arc::new(ExtensionCtx::from_coeffs(f3, &[1, 0, 1]).unwrap())
}

/// Distinct nonzero locator indices, nonzero multiplier indices, dimension.
fn arb_code(order: u64, max_k: usize) -> impl Strategy<Value = (Vec<u64>, Vec<u64>, usize)> {
    let nonzero: Vec<u64> = (1..order).collect();
    (2usize..order as usize).prop_flat_map(move |n| {
        (
            Just(nonzero.clone())
                .prop_shuffle()
                .prop_map(move |v| v[..n].to_vec()),
            proptest::collection::vec(1..order, n),
            1..=n.min(max_k),
        )
    })
}

fn build(ctx: &Arc<ExtensionCtx>, a: &[u64], b: &[u64], k: usize) -> GrsCode {
    let el = |i: &u64| ctx.element_from_index(*i).unwrap();
    GrsCode::new(
        ctx.clone(),
        a.iter().map(el).collect(),
        b.iter().map(el).collect(),
        k,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn extracted_design_distance_is_a_lower_bound((a, b, k) in arb_code(8, 5)) {
        let code = build(&f8(), &a, &b, k);
        let ssc = extract_subfield_subcode(&code).unwrap();
        prop_assert!(ssc.d_prime() >= code.d());
        if let Some(d) = oracle::min_distance_of(ssc.gprime(), DEFAULT_LIMIT).unwrap() {
            prop_assert!(d >= ssc.d_prime(), "true {} < design {}", d, ssc.d_prime());
        }
    }

    #[test]
    fn odd_characteristic_design_distance((a, b, k) in arb_code(9, 4)) {
        let code = build(&f9(), &a, &b, k);
        let ssc = extract_subfield_subcode(&code).unwrap();
        let span = oracle::span_of(ssc.gprime(), DEFAULT_LIMIT).unwrap();
        let brute = oracle::subfield_intersection_bruteforce(&code, DEFAULT_LIMIT).unwrap();
        prop_assert!(oracle::sets_equal(&span, &brute).unwrap());
        if let Some(d) = oracle::min_distance_exhaustive(&span) {
            prop_assert!(d >= ssc.d_prime());
        }
    }

    #[test]
    fn nested_selections_respect_their_design_distance((a, b, _k) in arb_code(8, 1)) {
        let code = build(&f8(), &a, &b, 1);
        let family = NestedFamily::from_parent(&code).unwrap();
        for entry in family.selections() {
            let sub = family.subcode(entry).unwrap();
            prop_assert_eq!(sub.k_prime(), entry.k_prime);
            if let Some(d) = oracle::min_distance_of(sub.gprime(), DEFAULT_LIMIT).unwrap() {
                prop_assert!(d >= entry.d_prime, "{}: true distance {}", entry, d);
            }
        }
        for pair in family.increasing_chain().windows(2) {
            prop_assert!(pair[0].d_prime < pair[1].d_prime);
            prop_assert!(pair[0].first <= pair[1].first && pair[1].last <= pair[0].last);
            // the smaller code lies inside the larger one
            let big = family.subcode(&pair[0]).unwrap();
            let small = family.subcode(&pair[1]).unwrap();
            let stacked = big.gprime().vstack(small.gprime()).unwrap();
            prop_assert_eq!(stacked.rank(), pair[0].k_prime);
        }
    }
}
