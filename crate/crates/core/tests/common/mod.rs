//! Strategies and property checks shared by the property and acceptance suites.

#![allow(dead_code)]

use anomaly_forms::charforms::ChernCharacterData;
use anomaly_forms::qseries::{product_form, QExp, QSeries};
use anomaly_forms::ring::{newton_convert, rat, GeneratorTable, GradedPoly, NewtonDirection, Rational, Ring};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const CASES: u32 = 128;

pub type Check = Result<(), TestCaseError>;

pub fn ring() -> Ring {
    GeneratorTable::new(&[("x", 2), ("y", 4), ("z", 6)], 12).unwrap()
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Random polynomial with monomials `x^a y^b z^c` of degree at most 12.
pub fn poly() -> impl Strategy<Value = GradedPoly> {
    prop::collection::vec(((0u8..=6, 0u8..=3, 0u8..=2), small_rational()), 0..6).prop_map(|terms| {
        let r = ring();
        let kept = terms.into_iter().filter(|((a, b, c), _)| 2 * *a as u32 + 4 * *b as u32 + 6 * *c as u32 <= 12);
        let mut p = GradedPoly::zero(&r);
        for ((a, b, c), coeff) in kept {
            p = &p + &GradedPoly::from_terms(&r, [(coeff, vec![a, b, c])]).unwrap();
        }
        p
    })
}

/// Homogeneous polynomial of degree `d` in `x, y, z`.
pub fn homogeneous(d: u32) -> impl Strategy<Value = GradedPoly> {
    poly().prop_map(move |p| p.component(d))
}

/// `q`-series with rational coefficients on exponents `k/2`, `k ≥ 1`.
pub fn positive_series(cap: i64) -> impl Strategy<Value = QSeries<Rational>> {
    prop::collection::vec(small_rational(), 2 * cap as usize).prop_map(move |coeffs| {
        let order = QExp::int(cap);
        QSeries::from_terms(&(), order, coeffs.into_iter().enumerate().map(|(k, c)| (QExp::HALF * (k as i64 + 1), c)))
    })
}

pub fn ring_axioms(a: GradedPoly, b: GradedPoly, c: GradedPoly) -> Check {
    let one = GradedPoly::one(&ring());
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!(&(&a + &b) - &b, a.clone());
    prop_assert_eq!(&a * &one, a.clone());
    Ok(())
}

pub fn substitution_homomorphism(a: GradedPoly, b: GradedPoly, x: GradedPoly, y: GradedPoly) -> Check {
    let bind = [("x", x), ("y", y)];
    let sa = a.substitute(&bind).unwrap();
    let sb = b.substitute(&bind).unwrap();
    prop_assert_eq!((&a * &b).substitute(&bind).unwrap(), &sa * &sb);
    prop_assert_eq!((&a + &b).substitute(&bind).unwrap(), &sa + &sb);
    Ok(())
}

pub fn newton_round_trip(p1: GradedPoly, p2: GradedPoly, p3: GradedPoly) -> Check {
    let power = vec![p1, p2, p3];
    let elementary = newton_convert(NewtonDirection::PowerToElementary, &power, 6).unwrap();
    let back = newton_convert(NewtonDirection::ElementaryToPower, &elementary, 6).unwrap();
    prop_assert_eq!(back, power);
    Ok(())
}

pub fn lambda_ring(a: GradedPoly, b: GradedPoly, rank: i64) -> Check {
    let r = ring();
    let shift = |p: GradedPoly| &p - &GradedPoly::constant(&r, p.constant_term()) + GradedPoly::constant(&r, rat(rank, 1));
    let x = ChernCharacterData::new(shift(a));
    let y = ChernCharacterData::new(shift(b));
    let square = x.tensor(&x);
    prop_assert_eq!(&x.lambda2() + &x.sym2(), square.clone());
    prop_assert_eq!(x.adams(2), &square - &x.lambda2().scale(&rat(2, 1)));
    // ψ³x = x³ - 3xΛ²x + 3Λ³x
    let cube = square.tensor(&x);
    let rhs = &(&cube - &x.tensor(&x.lambda2()).scale(&rat(3, 1))) + &x.lambda3().scale(&rat(3, 1));
    prop_assert_eq!(x.adams(3), rhs);
    prop_assert_eq!(x.tensor(&y).adams(3), x.adams(3).tensor(&y.adams(3)));
    prop_assert_eq!(x.rank(), rat(rank, 1));
    Ok(())
}

pub fn exp_homomorphism(a: QSeries<Rational>, b: QSeries<Rational>) -> Check {
    let sum = a.try_add(&b).unwrap();
    prop_assert_eq!(sum.exp().unwrap(), a.exp().unwrap().try_mul(&b.exp().unwrap()).unwrap());
    prop_assert_eq!(a.exp().unwrap().log().unwrap(), a);
    Ok(())
}

/// `∏_{n ≤ 8} (1 - c_n q^n)` truncated to `q^low` equals the product built
/// directly at that cap.
pub fn product_truncation(coeffs: Vec<Rational>, low: i64) -> Check {
    let factor = |cap: QExp| {
        let coeffs = coeffs.clone();
        move |n: u32| {
            let c = coeffs[(n as usize - 1) % coeffs.len()].clone();
            QSeries::from_terms(&(), cap, [(QExp::ZERO, rat(1, 1)), (QExp::int(n as i64), -c)])
        }
    };
    let high = QExp::int(8);
    let small = QExp::int(low);
    let wide = product_form(&(), high, QExp::ONE, 8, factor(high)).unwrap();
    let narrow = product_form(&(), small, QExp::ONE, low as u32, factor(small)).unwrap();
    prop_assert_eq!(wide.truncate(small), narrow);
    Ok(())
}

pub fn coefficients() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), 8)
}
