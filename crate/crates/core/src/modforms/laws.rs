//! Floating-point spot checks of the S and T transformation laws.

use std::f64::consts::PI;

use num::complex::Complex64;

use super::forms::{delta_eps, eisenstein, DeltaEps};
use super::theta::{theta_const, theta_prime_zero, ThetaKind};
use super::ModError;
use crate::qseries::{eval_numeric, tail_bound, QExp, QSeries};
use crate::ring::Rational;

/// Sample elliptic argument for the laws with `v != 0`.
pub const SAMPLE_V: Complex64 = Complex64::new(0.13, 0.07);

/// Default sample points in the upper half-plane.
pub const DEFAULT_TAUS: [Complex64; 3] = [Complex64::new(0.0, 2.0), Complex64::new(1.0, 2.0), Complex64::new(0.5, 2.0)];

pub const LAW_IDS: &[&str] = &[
    "E2_S",
    "E2_T",
    "E4_S",
    "E4_T",
    "E6_S",
    "E6_T",
    "theta_S",
    "theta_T",
    "theta1_S",
    "theta1_T",
    "theta2_S",
    "theta2_T",
    "theta3_S",
    "theta3_T",
    "theta1_0_S",
    "theta2_0_S",
    "theta3_0_S",
    "theta2_0_T",
    "theta_prime_S",
    "theta_prime_T",
    "delta1_S",
    "delta2_S",
    "eps1_S",
    "eps2_S",
    "delta1_T",
    "eps1_T",
];

#[derive(Debug, Clone, PartialEq)]
pub struct LawCheck {
    pub law: String,
    pub tau: Complex64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    /// Largest truncation tail bound among the series evaluated.
    pub tail: f64,
    pub passed: bool,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

fn s_image(tau: Complex64) -> Complex64 {
    -tau.inv()
}

/// `(τ/i)^{1/2}` on the principal branch.
fn sqrt_tau_over_i(tau: Complex64) -> Complex64 {
    (tau / I).sqrt()
}

/// The classical theta functions evaluated as complex products.
pub fn theta_numeric(kind: ThetaKind, v: Complex64, tau: Complex64) -> Complex64 {
    let nome = |a: f64| (I * 2.0 * PI * tau * a).exp();
    let w = (I * 2.0 * PI * v).exp();
    let terms = ((46.0 / (2.0 * PI * tau.im)).ceil() as usize).max(4) + 2;
    let (sign, half) = match kind {
        ThetaKind::Theta => (-1.0, false),
        ThetaKind::Theta1 => (1.0, false),
        ThetaKind::Theta2 => (-1.0, true),
        ThetaKind::Theta3 => (1.0, true),
    };
    let mut acc = Complex64::new(1.0, 0.0);
    for j in 1..=terms {
        let m = if half { j as f64 - 0.5 } else { j as f64 };
        acc *= (1.0 - nome(j as f64)) * (1.0 + sign * w * nome(m)) * (1.0 + sign * w.inv() * nome(m));
    }
    match kind {
        ThetaKind::Theta => acc * 2.0 * nome(0.125) * (PI * v).sin(),
        ThetaKind::Theta1 => acc * 2.0 * nome(0.125) * (PI * v).cos(),
        _ => acc,
    }
}

struct Eval {
    tol: f64,
    tail: f64,
}

impl Eval {
    fn at(&mut self, s: &QSeries<Rational>, tau: Complex64) -> Result<Complex64, ModError> {
        let bound = tail_bound(s, tau);
        if bound > self.tol {
            return Err(ModError::TailTooLarge { bound, tol: self.tol });
        }
        self.tail = self.tail.max(bound);
        Ok(eval_numeric(s, tau)?)
    }
}

/// Evaluates both sides of a law at `tau` and compares them.
pub fn check_transformation_numeric(law: &str, tau: Complex64, order: QExp, tol: f64) -> Result<LawCheck, ModError> {
    if tau.im <= 0.0 {
        return Err(ModError::NotInUpperHalfPlane);
    }
    if !LAW_IDS.contains(&law) {
        return Err(ModError::UnknownLaw(law.to_string()));
    }
    let mut ev = Eval { tol, tail: 0.0 };
    let st = s_image(tau);
    let t1 = tau + 1.0;
    let root = sqrt_tau_over_i(tau);
    let v = SAMPLE_V;
    let gauss = (I * PI * tau * v * v).exp();
    let th = |k| theta_const(k, order);
    let de = |w| delta_eps(w, order);
    let (lhs, rhs) = match law {
        "E2_S" => {
            let e2 = eisenstein(2, order)?;
            (ev.at(&e2, st)?, tau * tau * ev.at(&e2, tau)? - 6.0 * I * tau / PI)
        }
        "E4_S" | "E6_S" => {
            let k: u32 = if law == "E4_S" { 4 } else { 6 };
            let e = eisenstein(k, order)?;
            (ev.at(&e, st)?, tau.powu(k) * ev.at(&e, tau)?)
        }
        "E2_T" | "E4_T" | "E6_T" => {
            let e = eisenstein(law[1..2].parse().expect("digit"), order)?;
            (ev.at(&e, t1)?, ev.at(&e, tau)?)
        }
        "theta_S" => (theta_numeric(ThetaKind::Theta, v, st), I.inv() * root * gauss * theta_numeric(ThetaKind::Theta, tau * v, tau)),
        "theta1_S" => (theta_numeric(ThetaKind::Theta1, v, st), root * gauss * theta_numeric(ThetaKind::Theta2, tau * v, tau)),
        "theta2_S" => (theta_numeric(ThetaKind::Theta2, v, st), root * gauss * theta_numeric(ThetaKind::Theta1, tau * v, tau)),
        "theta3_S" => (theta_numeric(ThetaKind::Theta3, v, st), root * gauss * theta_numeric(ThetaKind::Theta3, tau * v, tau)),
        "theta_T" | "theta1_T" => {
            let k = if law == "theta_T" { ThetaKind::Theta } else { ThetaKind::Theta1 };
            (theta_numeric(k, v, t1), (I * PI / 4.0).exp() * theta_numeric(k, v, tau))
        }
        "theta2_T" => (theta_numeric(ThetaKind::Theta2, v, t1), theta_numeric(ThetaKind::Theta3, v, tau)),
        "theta3_T" => (theta_numeric(ThetaKind::Theta3, v, t1), theta_numeric(ThetaKind::Theta2, v, tau)),
        "theta1_0_S" => (ev.at(&th(ThetaKind::Theta1), st)?, root * ev.at(&th(ThetaKind::Theta2), tau)?),
        "theta2_0_S" => (ev.at(&th(ThetaKind::Theta2), st)?, root * ev.at(&th(ThetaKind::Theta1), tau)?),
        "theta3_0_S" => (ev.at(&th(ThetaKind::Theta3), st)?, root * ev.at(&th(ThetaKind::Theta3), tau)?),
        "theta2_0_T" => (ev.at(&th(ThetaKind::Theta2), t1)?, ev.at(&th(ThetaKind::Theta3), tau)?),
        "theta_prime_S" => {
            let tp = theta_prime_zero(order);
            (ev.at(&tp, st)?, I.inv() * root * tau * ev.at(&tp, tau)?)
        }
        "theta_prime_T" => {
            let tp = theta_prime_zero(order);
            (ev.at(&tp, t1)?, (I * PI / 4.0).exp() * ev.at(&tp, tau)?)
        }
        "delta1_S" => (ev.at(&de(DeltaEps::Delta1), st)?, tau * tau * ev.at(&de(DeltaEps::Delta2), tau)?),
        "delta2_S" => (ev.at(&de(DeltaEps::Delta2), st)?, tau * tau * ev.at(&de(DeltaEps::Delta1), tau)?),
        "eps1_S" => (ev.at(&de(DeltaEps::Eps1), st)?, tau.powu(4) * ev.at(&de(DeltaEps::Eps2), tau)?),
        "eps2_S" => (ev.at(&de(DeltaEps::Eps2), st)?, tau.powu(4) * ev.at(&de(DeltaEps::Eps1), tau)?),
        "delta1_T" => (ev.at(&de(DeltaEps::Delta1), t1)?, ev.at(&de(DeltaEps::Delta1), tau)?),
        "eps1_T" => (ev.at(&de(DeltaEps::Eps1), t1)?, ev.at(&de(DeltaEps::Eps1), tau)?),
        _ => unreachable!("law ids checked above"),
    };
    let residual = (lhs - rhs).norm();
    Ok(LawCheck { law: law.to_string(), tau, lhs, rhs, residual, tail: ev.tail, passed: residual < tol })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_laws_hold() {
        let order = QExp::int(40);
        for law in ["E2_S", "E4_S", "delta2_S", "theta_S", "theta2_0_T"] {
            for tau in DEFAULT_TAUS {
                let c = check_transformation_numeric(law, tau, order, 1e-9).unwrap();
                assert!(c.passed, "{law} at {tau}: {}", c.residual);
            }
        }
    }

    #[test]
    fn refuses_low_im_tau() {
        let r = check_transformation_numeric("E4_S", Complex64::new(0.0, 0.1), QExp::int(6), 1e-9);
        assert!(matches!(r, Err(ModError::TailTooLarge { .. })));
        assert!(matches!(check_transformation_numeric("nope", DEFAULT_TAUS[0], QExp::int(6), 1e-9), Err(ModError::UnknownLaw(_))));
    }
}
