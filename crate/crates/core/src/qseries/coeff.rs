use std::fmt;

use num::{One, Signed, Zero};

use crate::ring::{format_rational, same_ring, GradedPoly, Rational, Ring};

/// Coefficient ring of a q-series: exact rationals or graded polynomials.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn same_ctx(a: &Self::Ctx, b: &Self::Ctx) -> bool;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn from_rational(ctx: &Self::Ctx, r: Rational) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self {
        Self::from_rational(ctx, Rational::one())
    }

    fn vanishes(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self);
    /// `self += r * a`
    fn add_scaled(&mut self, a: &Self, r: &Rational);
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;

    /// True when the constant (degree-0) part vanishes.
    fn is_nilpotent(&self) -> bool;
    fn exp_nilpotent(&self) -> Option<Self>;
    /// Logarithm of `1 + nilpotent`.
    fn log_unipotent(&self) -> Option<Self>;
    fn inverse(&self) -> Option<Self>;

    fn as_rational(&self) -> Option<Rational>;

    /// `(negative, magnitude text, magnitude is exactly 1)`; compound values
    /// come back parenthesized.
    fn signed_parts(&self) -> (bool, String, bool);
}

impl Coeff for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn same_ctx(_: &(), _: &()) -> bool {
        true
    }
    fn zero_in(_: &()) -> Self {
        Rational::zero()
    }
    fn from_rational(_: &(), r: Rational) -> Self {
        r
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn add_scaled(&mut self, a: &Self, r: &Rational) {
        *self += a * r;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn is_nilpotent(&self) -> bool {
        Zero::is_zero(self)
    }
    fn exp_nilpotent(&self) -> Option<Self> {
        Zero::is_zero(self).then(Rational::one)
    }
    fn log_unipotent(&self) -> Option<Self> {
        self.is_one().then(Rational::zero)
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn signed_parts(&self) -> (bool, String, bool) {
        let abs = self.abs();
        (self.is_negative(), format_rational(&abs), abs.is_one())
    }
}

impl Coeff for GradedPoly {
    type Ctx = Ring;

    fn ctx(&self) -> Ring {
        self.ring().clone()
    }
    fn same_ctx(a: &Ring, b: &Ring) -> bool {
        same_ring(a, b)
    }
    fn zero_in(ctx: &Ring) -> Self {
        GradedPoly::zero(ctx)
    }
    fn from_rational(ctx: &Ring, r: Rational) -> Self {
        GradedPoly::constant(ctx, r)
    }
    fn vanishes(&self) -> bool {
        GradedPoly::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_assign_poly(other);
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        GradedPoly::add_product(self, a, b);
    }
    fn add_scaled(&mut self, a: &Self, r: &Rational) {
        GradedPoly::add_scaled(self, a, r);
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        GradedPoly::scale(self, r)
    }
    fn is_nilpotent(&self) -> bool {
        Zero::is_zero(&self.constant_term())
    }
    fn exp_nilpotent(&self) -> Option<Self> {
        self.exp().ok()
    }
    fn log_unipotent(&self) -> Option<Self> {
        self.log().ok()
    }
    fn inverse(&self) -> Option<Self> {
        GradedPoly::inverse(self).ok()
    }
    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }
    fn signed_parts(&self) -> (bool, String, bool) {
        if self.is_compound() {
            return (false, format!("({self})"), false);
        }
        let text = self.to_string();
        match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string(), rest == "1"),
            None => {
                let unit = text == "1";
                (false, text, unit)
            }
        }
    }
}
