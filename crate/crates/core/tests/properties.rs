//! Randomized exact-arithmetic properties.

mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn ring_axioms_hold(a in poly(), b in poly(), c in poly()) {
        ring_axioms(a, b, c)?;
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly(), b in poly(), x in homogeneous(2), y in homogeneous(4)) {
        substitution_homomorphism(a, b, x, y)?;
    }

    #[test]
    fn newton_identities_round_trip(p1 in homogeneous(2), p2 in homogeneous(4), p3 in homogeneous(6)) {
        newton_round_trip(p1, p2, p3)?;
    }

    #[test]
    fn lambda_ring_identities(a in poly(), b in poly(), rank in -4i64..=8) {
        lambda_ring(a, b, rank)?;
    }

    #[test]
    fn series_exp_is_a_homomorphism(a in positive_series(3), b in positive_series(3)) {
        exp_homomorphism(a, b)?;
    }

    #[test]
    fn product_truncation_is_stable(coeffs in coefficients(), low in 1i64..=7) {
        product_truncation(coeffs, low)?;
    }
}
