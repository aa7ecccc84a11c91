//! Soundness of negative verdicts: every NOT_EXISTS trace carries a witness
//! that this test re-derives from scratch (residue nonzero, divisor failing,
//! index non-integral, congruence failing).

use acx_core::arith::factorial;
use acx_core::decision::{
    classify_connected_sum, classify_product_rhs, guaranteed_connected_sum, hopf_summand,
    odd_sphere_square_summand, FiringKind, RhsFactor, Status, TriState, Verdict, Witness,
};
use acx_core::manifold::SummandList;
use num_bigint::BigInt;
use num_traits::Euclid;

/// Re-checks each witness against an independently recomputed value.
fn witnesses_recheck(verdict: &Verdict, euler: i64, dim: u32) {
    assert_eq!(verdict.status, Status::NotExists);
    let mut obstructions = 0;
    for f in &verdict.trace {
        if f.kind != FiringKind::Obstruction {
            continue;
        }
        obstructions += 1;
        match &f.witness {
            Some(Witness::Residue { value, modulus }) => {
                // (chi - c_top)/2 mod order with c_top = 0 on these families.
                let expected = BigInt::from(euler / 2).rem_euclid(modulus);
                assert_eq!(value, &expected, "residue witness mismatch");
                assert_ne!(value, &BigInt::ZERO);
            }
            Some(Witness::Divisibility { divisor, value }) => {
                let m = (dim - 2) / 4;
                assert_eq!(divisor, &BigInt::from(factorial(2 * m)));
                assert_eq!(value, &BigInt::from(euler));
                assert_ne!(value % divisor, BigInt::ZERO, "divisor should fail");
            }
            Some(Witness::Index { value }) => {
                assert!(!value.is_integer(), "index witness should be non-integral");
                let m = (dim - 2) / 4;
                let denom = BigInt::from(factorial(2 * m));
                let expected = acx_core::rational::Rational::ratio(BigInt::from(euler), denom);
                assert_eq!(value, &expected);
            }
            Some(Witness::Congruence { value, modulus }) => {
                assert_ne!(value.rem_euclid(modulus), BigInt::ZERO);
            }
            Some(Witness::Euler { value }) => {
                assert_eq!(value, &BigInt::from(euler));
                assert_ne!(value, &BigInt::ZERO);
            }
            other => panic!("unexpected witness on an obstruction firing: {other:?}"),
        }
    }
    assert!(obstructions > 0, "NOT_EXISTS without an obstruction firing");
}

#[test]
fn yang_family_witnesses_recheck() {
    for l in [2usize, 3, 13, 26] {
        let s = odd_sphere_square_summand(10);
        let list = SummandList::new(vec![s; l]).unwrap();
        let verdict = classify_connected_sum(&list).unwrap();
        witnesses_recheck(&verdict, 2 - 2 * l as i64, 10);
    }
}

#[test]
fn hopf_family_witnesses_recheck() {
    for l in [2usize, 3, 4, 7] {
        let list = SummandList::new(vec![hopf_summand(8); l]).unwrap();
        let verdict = classify_connected_sum(&list).unwrap();
        witnesses_recheck(&verdict, 2 - 2 * l as i64, 8);
    }
}

#[test]
fn guarantee_counterexample_witnesses_recheck() {
    for (dim, l) in [(10u32, 2u64), (10, 30), (14, 5), (4, 3), (12, 2)] {
        let verdict = guaranteed_connected_sum(dim, l).unwrap();
        witnesses_recheck(&verdict, 2 - 2 * l as i64, dim);
    }
}

#[test]
fn product_obstruction_witnesses_recheck() {
    // Case (b)-style pair: the index witness must be 4/(p+q-1)!.
    for (p, q) in [(3u32, 2u32), (5, 2), (3, 4), (1, 4), (1, 6)] {
        let verdict = classify_product_rhs(
            RhsFactor::new(p, TriState::Unknown),
            RhsFactor::new(q, TriState::Unknown),
        )
        .unwrap();
        assert_eq!(verdict.status, Status::NotExists, "({p},{q})");
        let witness = verdict.decisive().unwrap().witness.clone();
        let Some(Witness::Index { value }) = witness else {
            panic!("expected an index witness for ({p},{q})");
        };
        assert!(!value.is_integer());
        let expected = acx_core::rational::Rational::ratio(
            BigInt::from(4),
            BigInt::from(factorial(p + q - 1)),
        );
        assert_eq!(value, expected, "({p},{q})");
    }
    // Case (c) odd q >= 5: witness 2/(q-1)!.
    let verdict = classify_product_rhs(
        RhsFactor::new(1, TriState::Unknown),
        RhsFactor::new(5, TriState::Unknown),
    )
    .unwrap();
    let Some(Witness::Index { value }) = verdict.decisive().unwrap().witness.clone() else {
        panic!("expected an index witness");
    };
    assert_eq!(
        value,
        acx_core::rational::Rational::ratio(BigInt::from(2), BigInt::from(factorial(4)))
    );
    // Case (a): the uv-coefficient witness is exactly 8.
    let verdict = classify_product_rhs(
        RhsFactor::new(2, TriState::Unknown),
        RhsFactor::new(4, TriState::Unknown),
    )
    .unwrap();
    let Some(Witness::Coefficient { monomial, value }) =
        verdict.decisive().unwrap().witness.clone()
    else {
        panic!("expected a coefficient witness");
    };
    assert_eq!((monomial.as_str(), value.as_str()), ("u*v", "8"));
}
