//! Property tests for the exact-arithmetic and bound-calculus invariants.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

use transclab_core::algebra::{rank_over_q, FieldContext, RadicalElement};
use transclab_core::families::{certify, FamilySpec};
use transclab_core::gamma::{
    circuit_lower_bound, gamma_combine, gamma_exponential_set, GammaValue, TensorNetworkGraph,
};

fn ctx(primes: &[u32], d: u32) -> Arc<FieldContext> {
    Arc::new(FieldContext::new(primes.iter().map(|&p| BigUint::from(p)).collect(), d).unwrap())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Strategy: a sparse element of the given context with small coefficients.
fn element_strategy(primes: &'static [u32], d: u32) -> impl Strategy<Value = RadicalElement> {
    let n = primes.len();
    let term = (
        proptest::collection::vec(0..d, n),
        -9i64..=9,
        1i64..=4,
    );
    proptest::collection::vec(term, 0..4).prop_map(move |terms| {
        let c = ctx(primes, d);
        RadicalElement::from_terms(
            c,
            terms
                .into_iter()
                .map(|(j, num, den)| (j, rat(num, den))),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms_d2(
        a in element_strategy(&[2, 3], 2),
        b in element_strategy(&[2, 3], 2),
        c in element_strategy(&[2, 3], 2),
    ) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn field_axioms_d3(
        a in element_strategy(&[2, 5], 3),
        b in element_strategy(&[2, 5], 3),
        c in element_strategy(&[2, 5], 3),
    ) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn rank_invariances(
        list in proptest::collection::vec(element_strategy(&[2, 3], 2), 1..5),
        scale_num in 1i64..=7,
        perm_seed in any::<u64>(),
    ) {
        let base = rank_over_q(&list).unwrap();

        // permutation invariance
        let mut permuted = list.clone();
        let k = permuted.len();
        for i in 0..k {
            let j = ((perm_seed as usize).wrapping_mul(31).wrapping_add(i * 17)) % k;
            permuted.swap(i, j);
        }
        prop_assert_eq!(rank_over_q(&permuted).unwrap(), base);

        // scaling an element by a nonzero rational
        let mut scaled = list.clone();
        scaled[0] = scaled[0].scale(&rat(scale_num, 3));
        prop_assert_eq!(rank_over_q(&scaled).unwrap(), base);

        // adding a rational combination of the others to one element
        if list.len() >= 2 {
            let mut combo = list.clone();
            let add = combo[1].scale(&rat(2, 5));
            combo[0] = combo[0].try_add(&add).unwrap();
            prop_assert_eq!(rank_over_q(&combo).unwrap(), base);
        }
    }

    #[test]
    fn gamma_exponential_matches_rank(
        list in proptest::collection::vec(element_strategy(&[2, 3], 2), 1..5),
    ) {
        // γ({e^{tα}}) is definitionally the rank of the exponents
        let g = gamma_exponential_set(&list, &rat(1, 1)).unwrap();
        prop_assert_eq!(g.value, BigUint::from(rank_over_q(&list).unwrap()));
    }

    #[test]
    fn gamma_monotone_under_enlargement(
        list in proptest::collection::vec(element_strategy(&[2, 3], 2), 1..4),
        extra in element_strategy(&[2, 3], 2),
    ) {
        let small = gamma_exponential_set(&list, &rat(2, 1)).unwrap();
        let mut bigger = list.clone();
        bigger.push(extra);
        let big = gamma_exponential_set(&bigger, &rat(2, 1)).unwrap();
        prop_assert!(big.value >= small.value);
    }

    #[test]
    fn gamma_combine_order_insensitive(values in proptest::collection::vec(0u32..100, 1..6)) {
        let parts: Vec<GammaValue> = values
            .iter()
            .map(|&v| GammaValue::exact(BigUint::from(v), vec![]))
            .collect();
        let forward = gamma_combine(&parts).unwrap();
        let mut reversed = parts.clone();
        reversed.reverse();
        let backward = gamma_combine(&reversed).unwrap();
        prop_assert_eq!(forward.value.clone(), backward.value);
        // associativity in value: combine of combines
        if parts.len() >= 2 {
            let (left, right) = parts.split_at(parts.len() / 2);
            let nested = gamma_combine(&[
                gamma_combine(left).unwrap(),
                gamma_combine(right).unwrap(),
            ])
            .unwrap();
            prop_assert_eq!(forward.value, nested.value);
        }
    }

    #[test]
    fn tn_exact_never_exceeds_coarse(
        degrees in proptest::collection::vec(1usize..4, 1..5),
        dims in proptest::collection::vec(1u64..5, 12),
        d in 1u64..4,
    ) {
        // chain layout: vertex v carries degrees[v] external legs (dim d)
        // plus bonds of varying dimension to neighbors v−1 and v+1
        let mut edge_dims = BTreeMap::new();
        let mut next_edge = 0usize;
        let vcount = degrees.len();
        let mut vertex_edges: Vec<Vec<usize>> = vec![Vec::new(); vcount];
        for (v, &deg) in degrees.iter().enumerate() {
            for _ in 0..deg {
                edge_dims.insert(next_edge, d);
                vertex_edges[v].push(next_edge);
                next_edge += 1;
            }
        }
        let externals = next_edge;
        for v in 0..vcount.saturating_sub(1) {
            let bond_dim = 1 + dims[v % dims.len()];
            edge_dims.insert(next_edge, bond_dim);
            vertex_edges[v].push(next_edge);
            vertex_edges[v + 1].push(next_edge);
            next_edge += 1;
        }
        let graph = TensorNetworkGraph::new(d, externals, vertex_edges, edge_dims).unwrap();
        let counts = graph.parameter_count();
        prop_assert!(counts.exact <= counts.coarse);

        // equality iff every vertex has degree δ and all incident dims = D
        let uniform_degree = graph
            .internal_vertices()
            .iter()
            .all(|e| e.len() == counts.max_degree);
        let uniform_dims = graph.edge_dims().values().all(|&x| x == counts.max_bond);
        prop_assert_eq!(counts.exact == counts.coarse, uniform_degree && uniform_dims);
    }
}

fn field_axioms(a: &RadicalElement, b: &RadicalElement, c: &RadicalElement) {
    let one = RadicalElement::one(a.context().clone());
    // associativity
    assert_eq!(
        a.try_add(b).unwrap().try_add(c).unwrap(),
        a.try_add(&b.try_add(c).unwrap()).unwrap()
    );
    assert_eq!(
        a.try_mul(b).unwrap().try_mul(c).unwrap(),
        a.try_mul(&b.try_mul(c).unwrap()).unwrap()
    );
    // commutativity
    assert_eq!(a.try_add(b).unwrap(), b.try_add(a).unwrap());
    assert_eq!(a.try_mul(b).unwrap(), b.try_mul(a).unwrap());
    // distributivity
    assert_eq!(
        a.try_mul(&b.try_add(c).unwrap()).unwrap(),
        a.try_mul(b).unwrap().try_add(&a.try_mul(c).unwrap()).unwrap()
    );
    // multiplicative identity
    assert_eq!(a.try_mul(&one).unwrap(), a.clone());
}

#[test]
fn monomial_basis_rank_is_full_for_all_small_contexts() {
    // rank({φ(j)}) = d^n — the basis-faithfulness axiom made testable
    for (d, n) in [(2u32, 1usize), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
        let c = Arc::new(FieldContext::with_first_primes(n, d).unwrap());
        let monomials: Vec<RadicalElement> = c
            .exponent_tuples()
            .map(|j| RadicalElement::monomial(c.clone(), &j).unwrap())
            .collect();
        let expected = (d as usize).pow(n as u32);
        assert_eq!(rank_over_q(&monomials).unwrap(), expected, "d={d} n={n}");
    }
}

#[test]
fn circuit_bound_recovers_exponential_form() {
    // ⌈d^n / d⁴⌉ = d^{n−4} whenever d⁴ | d^n
    for (d, n) in [(2u32, 5usize), (2, 8), (2, 10), (3, 6)] {
        let c = Arc::new(FieldContext::with_first_primes(n, d).unwrap());
        let monomials: Vec<RadicalElement> = c
            .exponent_tuples()
            .map(|j| RadicalElement::monomial(c.clone(), &j).unwrap())
            .collect();
        let gamma = gamma_exponential_set(&monomials, &rat(1, 1)).unwrap();
        let bound = circuit_lower_bound(&gamma, d).unwrap();
        let expected = BigUint::from(d).pow((n - 4) as u32);
        assert_eq!(bound, expected, "d={d} n={n}");
    }
}

#[test]
fn certificate_c0_nondecreasing_in_n() {
    let mut prev = BigUint::from(0u32);
    for n in 1..=10usize {
        let c = Arc::new(FieldContext::with_first_primes(n, 2).unwrap());
        let spec = FamilySpec::new(c, rat(1, 1)).unwrap();
        let cert = certify(&spec, 1 << 16).unwrap();
        assert!(cert.c0_lower >= prev, "n={n}");
        prev = cert.c0_lower;
    }
}

#[test]
fn gibbs_interval_width_is_one_unless_zero() {
    use transclab_core::gamma::{gibbs_bounds, SpectrumSet};
    let c = ctx(&[2, 3], 2);
    let cases: Vec<Vec<RadicalElement>> = vec![
        vec![RadicalElement::zero(c.clone())],
        vec![RadicalElement::one(c.clone())],
        vec![
            RadicalElement::one(c.clone()),
            RadicalElement::monomial(c.clone(), &[1, 0]).unwrap(),
            RadicalElement::monomial(c.clone(), &[0, 1]).unwrap(),
        ],
    ];
    for values in cases {
        let spectrum = SpectrumSet::new(values).unwrap();
        let b = gibbs_bounds(&spectrum).unwrap();
        if b.dim == 0 {
            assert_eq!(b.gamma_upper - b.gamma_lower, 0);
        } else {
            assert_eq!(b.gamma_upper - b.gamma_lower, 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rational_to_f64_is_faithful(num in -1_000_000_000i64..1_000_000_000, den in 1i64..1_000_000_000, scale_pow in 0u32..80) {
        use transclab_core::algebra::rational_to_f64;
        // spread magnitudes across ~160 decades
        let big = BigInt::from(10u32).pow(scale_pow);
        let q = BigRational::new(BigInt::from(num) * &big, BigInt::from(den));
        let x = rational_to_f64(&q);
        let back = BigRational::from_float(x);
        if let Some(back) = back {
            let err = (&q - &back).abs();
            let budget = q.abs() * BigRational::new(BigInt::one(), BigInt::one() << 50)
                + BigRational::new(BigInt::one(), BigInt::from(10u32).pow(300));
            prop_assert!(err <= budget, "q ~ {x}, err too large");
        } else {
            prop_assert!(x == 0.0 || !x.is_finite());
        }
    }

    #[test]
    fn phase_reduction_matches_float_arithmetic(int_part in 0u32..100_000u32, frac in 0u32..1_000_000u32) {
        use transclab_core::algebra::reduce_phase;
        // x = int_part + frac/10^6, far below the precision where f64 % TAU
        // itself degrades
        let x = BigRational::new(
            BigInt::from(int_part as u64) * BigInt::from(1_000_000u64) + BigInt::from(frac as u64),
            BigInt::from(1_000_000u64),
        );
        let (phase, err) = reduce_phase(&x, &x, 12).unwrap();
        prop_assert!(err < 1e-11);
        prop_assert!((0.0..core::f64::consts::TAU).contains(&phase));
        let xf = int_part as f64 + frac as f64 * 1e-6;
        let expected = xf % core::f64::consts::TAU;
        let diff = (phase - expected).abs();
        let circle = diff.min(core::f64::consts::TAU - diff);
        // f64 % TAU at x ≤ 1e5 is accurate to ~1e-11 absolute
        prop_assert!(circle < 5e-11, "x = {xf}: {phase} vs {expected}");
    }
}
