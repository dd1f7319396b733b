use num::One;

use super::theta::{phi_pow, theta_const, theta_prime_zero, ThetaKind};
use super::ModError;
use crate::qseries::{QExp, QSeries};
use crate::ring::{int, rat, Rational};

fn divisor_power_sum(n: i64, p: u32) -> i128 {
    (1..=n).filter(|d| n % d == 0).map(|d| (d as i128).pow(p)).sum()
}

/// `E_2`, `E_4`, `E_6` from their divisor-sum expansions.
pub fn eisenstein(k: u32, order: QExp) -> Result<QSeries<Rational>, ModError> {
    let (factor, power) = match k {
        2 => (-24, 1),
        4 => (240, 3),
        6 => (-504, 5),
        _ => return Err(ModError::UnsupportedWeight(k)),
    };
    let top = order.floor().max(0);
    let terms = std::iter::once((QExp::ZERO, Rational::one()))
        .chain((1..=top).map(|n| (QExp::int(n), Rational::from_integer((factor as i128 * divisor_power_sum(n, power)).into()))));
    Ok(QSeries::from_terms(&(), order, terms))
}

/// Level-2 forms built from fourth powers of theta constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaEps {
    Delta1,
    Eps1,
    Delta2,
    Eps2,
}

pub fn delta_eps(which: DeltaEps, order: QExp) -> QSeries<Rational> {
    let fourth = |kind| theta_const(kind, order).pow(4).expect("non-negative power");
    match which {
        DeltaEps::Delta1 => (fourth(ThetaKind::Theta2) + fourth(ThetaKind::Theta3)).scale(&rat(1, 8)),
        DeltaEps::Eps1 => (fourth(ThetaKind::Theta2) * fourth(ThetaKind::Theta3)).scale(&rat(1, 16)),
        DeltaEps::Delta2 => (fourth(ThetaKind::Theta1) + fourth(ThetaKind::Theta3)).scale(&rat(-1, 8)),
        DeltaEps::Eps2 => (fourth(ThetaKind::Theta1) * fourth(ThetaKind::Theta3)).scale(&rat(1, 16)),
    }
}

/// Names accepted by [`named_series`].
pub const SERIES_NAMES: &[&str] = &[
    "E2",
    "E4",
    "E6",
    "phi",
    "phi8",
    "phi16",
    "theta1_0",
    "theta2_0",
    "theta3_0",
    "theta_prime_0",
    "delta1",
    "eps1",
    "delta2",
    "eps2",
    "E4^2*E6",
    "E4*E6",
    "E4^2",
];

/// Looks up a registered scalar series by name.
pub fn named_series(name: &str, order: QExp) -> Result<QSeries<Rational>, ModError> {
    let e = |k| eisenstein(k, order);
    Ok(match name {
        "E2" => e(2)?,
        "E4" => e(4)?,
        "E6" => e(6)?,
        "phi" => phi_pow(1, order),
        "phi8" => phi_pow(8, order),
        "phi16" => phi_pow(16, order),
        "theta1_0" => theta_const(ThetaKind::Theta1, order),
        "theta2_0" => theta_const(ThetaKind::Theta2, order),
        "theta3_0" => theta_const(ThetaKind::Theta3, order),
        "theta_prime_0" => theta_prime_zero(order),
        "delta1" => delta_eps(DeltaEps::Delta1, order),
        "eps1" => delta_eps(DeltaEps::Eps1, order),
        "delta2" => delta_eps(DeltaEps::Delta2, order),
        "eps2" => delta_eps(DeltaEps::Eps2, order),
        "E4^2*E6" => e(4)?.pow(2).expect("power") * e(6)?,
        "E4*E6" => e(4)? * e(6)?,
        "E4^2" => e(4)?.pow(2).expect("power"),
        _ => return Err(ModError::UnknownSeries(name.to_string())),
    })
}

/// Integer-exponent series `c_0 + c_1 q + ...` from a coefficient list.
pub fn integer_series(coeffs: &[i64], order: QExp) -> QSeries<Rational> {
    QSeries::from_terms(&(), order, coeffs.iter().enumerate().map(|(i, c)| (QExp::int(i as i64), int(*c))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_anchors() {
        let q3 = QExp::int(3);
        assert_eq!(eisenstein(2, q3).unwrap(), integer_series(&[1, -24, -72, -96], q3));
        assert_eq!(eisenstein(4, q3).unwrap(), integer_series(&[1, 240, 2160, 6720], q3));
        assert_eq!(eisenstein(6, q3).unwrap(), integer_series(&[1, -504, -16632, -122976], q3));
        assert!(matches!(eisenstein(8, q3), Err(ModError::UnsupportedWeight(8))));
    }

    #[test]
    fn level_two_forms() {
        let o = QExp::new(3, 2).unwrap();
        assert_eq!(delta_eps(DeltaEps::Delta1, o).to_string(), "1/4 + 6 q");
        assert_eq!(delta_eps(DeltaEps::Delta2, o).scale(&int(8)).to_string(), "-1 - 24 q^{1/2} - 24 q - 96 q^{3/2}");
        assert_eq!(delta_eps(DeltaEps::Eps2, o).to_string(), "q^{1/2} + 8 q + 28 q^{3/2}");
        assert_eq!(delta_eps(DeltaEps::Eps1, QExp::int(1)).to_string(), "1/16 - q");
    }

    #[test]
    fn registry() {
        let o = QExp::int(2);
        assert_eq!(named_series("E4^2*E6", o).unwrap().to_string(), "1 - 24 q - 196632 q^2");
        assert!(matches!(named_series("E8", o), Err(ModError::UnknownSeries(_))));
        for name in SERIES_NAMES {
            named_series(name, o).unwrap();
        }
    }
}
