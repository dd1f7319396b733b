use num::One;

use super::ModError;
use crate::qseries::{product_form, product_threshold, Coeff, QExp, QSeries};
use num::BigInt;

use crate::ring::{int, inv_factorial, rat, GradedPoly, Rational};

/// The four normalized Jacobi theta functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    Theta,
    Theta1,
    Theta2,
    Theta3,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 4] = [ThetaKind::Theta, ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3];

    fn has_prefactor(self) -> bool {
        matches!(self, ThetaKind::Theta | ThetaKind::Theta1)
    }

    fn sign(self) -> Rational {
        match self {
            ThetaKind::Theta | ThetaKind::Theta2 => -Rational::one(),
            ThetaKind::Theta1 | ThetaKind::Theta3 => Rational::one(),
        }
    }
}

/// `∏_n (1 - q^n)(1 ± x q^m)(1 ± y q^m)`, `m = n` or `n - 1/2`.
fn theta_product<R: Coeff>(ctx: &R::Ctx, kind: ThetaKind, x: &R, y: &R, cap: QExp) -> QSeries<R> {
    let step = if kind.has_prefactor() { QExp::ONE } else { QExp::HALF };
    let sign = kind.sign();
    let n_max = product_threshold(cap, step);
    product_form(ctx, cap, step, n_max, |n| {
        let n_exp = QExp::int(n as i64);
        let m = if kind.has_prefactor() { n_exp } else { n_exp - QExp::HALF };
        let one = R::one_in(ctx);
        let a = QSeries::from_terms(ctx, cap, [(QExp::ZERO, one.clone()), (n_exp, R::from_rational(ctx, -Rational::one()))]);
        let b = QSeries::from_terms(ctx, cap, [(QExp::ZERO, one.clone()), (m, x.scale(&sign))]);
        let c = QSeries::from_terms(ctx, cap, [(QExp::ZERO, one), (m, y.scale(&sign))]);
        &(&a * &b) * &c
    })
    .expect("theta product factors satisfy the truncation bound")
}

fn with_prefactor<R: Coeff>(product: QSeries<R>, pre: &R, order: QExp) -> QSeries<R> {
    product.mul_coeff(pre).shift(QExp::EIGHTH).truncate(order)
}

/// Theta constant `NΘ_k(0)` as a rational series through `q^order`.
pub fn theta_const(kind: ThetaKind, order: QExp) -> QSeries<Rational> {
    let one = Rational::one();
    match kind {
        ThetaKind::Theta => QSeries::zero(&(), order),
        ThetaKind::Theta1 => {
            let p = theta_product(&(), kind, &one, &one, order - QExp::EIGHTH);
            with_prefactor(p, &int(2), order)
        }
        ThetaKind::Theta2 | ThetaKind::Theta3 => theta_product(&(), kind, &one, &one, order),
    }
}

fn check_argument(z: &GradedPoly) -> Result<(), ModError> {
    if z.is_zero() || z.homogeneous_degree() == Some(2) {
        Ok(())
    } else {
        Err(ModError::ArgumentDegree(z.to_string()))
    }
}

/// `NΘ_k(z)` for a degree-2 form `z`.
pub fn theta(kind: ThetaKind, z: &GradedPoly, order: QExp) -> Result<QSeries<GradedPoly>, ModError> {
    check_argument(z)?;
    let ring = z.ring().clone();
    let ez = z.exp()?;
    let emz = (-z).exp()?;
    if !kind.has_prefactor() {
        return Ok(theta_product(&ring, kind, &ez, &emz, order));
    }
    let half = z.scale(&rat(1, 2));
    let (eh, emh) = (half.exp()?, (-&half).exp()?);
    let pre = if kind == ThetaKind::Theta { &eh - &emh } else { &eh + &emh };
    let p = theta_product(&ring, kind, &ez, &emz, order - QExp::EIGHTH);
    Ok(with_prefactor(p, &pre, order))
}

/// `NΘ(z)/z`, whose constant coefficient starts at 1.
pub fn theta_over_arg(z: &GradedPoly, order: QExp) -> Result<QSeries<GradedPoly>, ModError> {
    check_argument(z)?;
    let ring = z.ring().clone();
    let pre = sinh_half_over_half(z);
    let p = theta_product(&ring, ThetaKind::Theta, &z.exp()?, &(-z).exp()?, order - QExp::EIGHTH);
    Ok(with_prefactor(p, &pre, order))
}

/// `sinh(z/2)/(z/2) = Σ z^{2k} / (4^k (2k+1)!)`
fn sinh_half_over_half(z: &GradedPoly) -> GradedPoly {
    let ring = z.ring().clone();
    let mut out = GradedPoly::zero(&ring);
    let z2 = z * z;
    let mut power = GradedPoly::one(&ring);
    let mut k = 0u32;
    while !power.is_zero() {
        let c = inv_factorial(2 * k + 1) / Rational::from_integer(BigInt::from(4u32).pow(k));
        out.add_scaled(&power, &c);
        power = &power * &z2;
        k += 1;
    }
    out
}

fn form_product(kind: ThetaKind, z: &GradedPoly, order: QExp) -> Result<QSeries<GradedPoly>, ModError> {
    check_argument(z)?;
    Ok(theta_product(z.ring(), kind, &z.exp()?, &(-z).exp()?, order))
}

/// `NΘ_k(z)/NΘ_k(0)` for `k = 1, 2, 3`; constant coefficient `1 + O(z^2)`.
pub fn theta_ratio(kind: ThetaKind, z: &GradedPoly, order: QExp) -> Result<QSeries<GradedPoly>, ModError> {
    if kind == ThetaKind::Theta {
        return Err(ModError::UnsupportedWeight(0));
    }
    let ring = z.ring().clone();
    let one = Rational::one();
    let denominator = theta_product(&(), kind, &one, &one, order).promote(&ring);
    let mut ratio = form_product(kind, z, order)?.try_div(&denominator)?;
    if kind == ThetaKind::Theta1 {
        let half = z.scale(&rat(1, 2));
        let cosh = (&half.exp()? + &(-&half).exp()?).scale(&rat(1, 2));
        ratio = ratio.mul_coeff(&cosh);
    }
    Ok(ratio)
}

/// `z NΘ'(0)/NΘ(z)`; constant coefficient `(z/2)/sinh(z/2)`.
pub fn z_theta_prime_over_theta(z: &GradedPoly, order: QExp) -> Result<QSeries<GradedPoly>, ModError> {
    let ring = z.ring().clone();
    let denominator = form_product(ThetaKind::Theta, z, order)?.mul_coeff(&sinh_half_over_half(z));
    Ok(phi_pow(3, order).promote(&ring).try_div(&denominator)?)
}

/// `NΘ(c) / (NΘ_1 NΘ_2 NΘ_3)(0)`, i.e. `sinh(c/2) ∏ (1-e^c q^n)(1-e^{-c} q^n)/(1-q^n)^2`.
pub fn theta_line_quotient(c: &GradedPoly, order: QExp) -> Result<QSeries<GradedPoly>, ModError> {
    let ring = c.ring().clone();
    let half = c.scale(&rat(1, 2));
    let sinh = (&half.exp()? - &(-&half).exp()?).scale(&rat(1, 2));
    let product = form_product(ThetaKind::Theta, c, order)?;
    Ok(product.try_div(&phi_pow(3, order).promote(&ring))?.mul_coeff(&sinh))
}

/// `φ(τ) = ∏ (1 - q^n)`.
pub fn phi(order: QExp) -> QSeries<Rational> {
    let n_max = product_threshold(order, QExp::ONE);
    product_form(&(), order, QExp::ONE, n_max, |n| {
        QSeries::from_terms(&(), order, [(QExp::ZERO, Rational::one()), (QExp::int(n as i64), -Rational::one())])
    })
    .expect("phi factors satisfy the truncation bound")
}

/// `φ^k`, negative `k` allowed.
pub fn phi_pow(k: i64, order: QExp) -> QSeries<Rational> {
    phi(order).pow(k).expect("phi has unit constant term")
}

/// `NΘ'(0) = q^{1/8} φ^3`.
pub fn theta_prime_zero(order: QExp) -> QSeries<Rational> {
    phi_pow(3, order - QExp::EIGHTH).shift(QExp::EIGHTH)
}
