//! Serialization invariants: randomized round trips through the JSON wire
//! formats preserve exact values.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

use transclab::formats::{element_from_json, element_to_json, graph_from_json, graph_to_json};
use transclab_core::algebra::{FieldContext, RadicalElement};
use transclab_core::gamma::TensorNetworkGraph;

fn element_strategy() -> impl Strategy<Value = RadicalElement> {
    let term = (
        proptest::collection::vec(0u32..2, 2),
        any::<i32>(),
        1i64..=1_000_000,
    );
    proptest::collection::vec(term, 0..5).prop_map(|terms| {
        let ctx = Arc::new(
            FieldContext::new(vec![BigUint::from(2u32), BigUint::from(3u32)], 2).unwrap(),
        );
        RadicalElement::from_terms(
            ctx,
            terms.into_iter().map(|(j, num, den)| {
                (j, BigRational::new(BigInt::from(num), BigInt::from(den)))
            }),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn element_json_round_trip_is_exact(e in element_strategy()) {
        let text = serde_json::to_string(&element_to_json(&e)).unwrap();
        let back = element_from_json(&serde_json::from_str(&text).unwrap(), None).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn mps_graph_round_trip_preserves_counts(
        sites in 1usize..7,
        bond in 1u64..9,
        d in 1u64..4,
    ) {
        let g = TensorNetworkGraph::mps_chain(d, bond, sites).unwrap();
        let text = serde_json::to_string(&graph_to_json(&g)).unwrap();
        let back = graph_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back.parameter_count(), g.parameter_count());
        prop_assert_eq!(back.external_count(), g.external_count());
    }
}
