use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::One;

use super::{Coeff, QExp, SeriesError};
use crate::ring::{int, GradedPoly, Rational, Ring};

/// Truncated q-series. Coefficients of exponents above `order_cap` are
/// unknown; exponents at or below it are exact.
#[derive(Clone, Debug)]
pub struct QSeries<R: Coeff> {
    ctx: R::Ctx,
    order_cap: QExp,
    terms: BTreeMap<QExp, R>,
}

impl<R: Coeff> PartialEq for QSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        R::same_ctx(&self.ctx, &other.ctx) && self.order_cap == other.order_cap && self.terms == other.terms
    }
}

impl<R: Coeff> QSeries<R> {
    pub fn zero(ctx: &R::Ctx, order_cap: QExp) -> Self {
        QSeries { ctx: ctx.clone(), order_cap, terms: BTreeMap::new() }
    }

    pub fn one(ctx: &R::Ctx, order_cap: QExp) -> Self {
        Self::constant(R::one_in(ctx), order_cap)
    }

    pub fn constant(c: R, order_cap: QExp) -> Self {
        Self::monomial(QExp::ZERO, c, order_cap)
    }

    /// `c q^e`
    pub fn monomial(e: QExp, c: R, order_cap: QExp) -> Self {
        let mut s = Self::zero(&c.ctx(), order_cap);
        if e <= order_cap && !c.vanishes() {
            s.terms.insert(e, c);
        }
        s
    }

    /// Sums repeated exponents; drops zeros and exponents above the cap.
    pub fn from_terms<I>(ctx: &R::Ctx, order_cap: QExp, terms: I) -> Self
    where
        I: IntoIterator<Item = (QExp, R)>,
    {
        let mut s = Self::zero(ctx, order_cap);
        for (e, c) in terms {
            if e <= order_cap {
                s.accumulate(e, &c);
            }
        }
        s.prune();
        s
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn order_cap(&self) -> QExp {
        self.order_cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (QExp, &R)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest stored exponent, or the cap for the zero series.
    pub fn low(&self) -> QExp {
        self.terms.keys().next().copied().unwrap_or(self.order_cap)
    }

    /// Coefficient of `q^e`; zero when nothing is stored there.
    pub fn coefficient(&self, e: QExp) -> Result<R, SeriesError> {
        if e > self.order_cap {
            return Err(SeriesError::BeyondTruncation { requested: e.to_string(), cap: self.order_cap.to_string() });
        }
        Ok(self.terms.get(&e).cloned().unwrap_or_else(|| R::zero_in(&self.ctx)))
    }

    fn coeff_ref(&self, e: QExp) -> Option<&R> {
        self.terms.get(&e)
    }

    fn accumulate(&mut self, e: QExp, c: &R) {
        match self.terms.get_mut(&e) {
            Some(slot) => slot.add_assign(c),
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.vanishes());
    }

    fn check_ctx(&self, other: &Self) -> Result<(), SeriesError> {
        if R::same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(SeriesError::ContextMismatch)
        }
    }

    /// Lowers the cap (never raises it).
    pub fn truncate(&self, order_cap: QExp) -> Self {
        let cap = order_cap.min(self.order_cap);
        QSeries { ctx: self.ctx.clone(), order_cap: cap, terms: self.terms.range(..=cap).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: QExp) -> Self {
        QSeries {
            ctx: self.ctx.clone(),
            order_cap: self.order_cap + e,
            terms: self.terms.iter().map(|(k, c)| (*k + e, c.clone())).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ctx(other)?;
        let mut out = self.truncate(other.order_cap);
        for (e, c) in other.terms.range(..=out.order_cap) {
            out.accumulate(*e, c);
        }
        out.prune();
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_add(&other.neg_series())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ctx(other)?;
        let cap = (self.order_cap + other.low()).min(other.order_cap + self.low());
        let mut out = Self::zero(&self.ctx, cap);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = *ea + *eb;
                if e > cap {
                    break;
                }
                match out.terms.get_mut(&e) {
                    Some(slot) => slot.add_product(ca, cb),
                    None => {
                        let mut slot = R::zero_in(&self.ctx);
                        slot.add_product(ca, cb);
                        out.terms.insert(e, slot);
                    }
                }
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.scale(r);
        }
        out.prune();
        out
    }

    /// Multiplies every coefficient by a ring element.
    pub fn mul_coeff(&self, c: &R) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c);
        }
        out.prune();
        out
    }

    fn neg_series(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn map_coeffs<S: Coeff, F>(&self, ctx: &S::Ctx, mut f: F) -> QSeries<S>
    where
        F: FnMut(&R) -> S,
    {
        let mut out = QSeries::<S>::zero(ctx, self.order_cap);
        for (e, c) in &self.terms {
            out.terms.insert(*e, f(c));
        }
        out.prune();
        out
    }

    pub fn try_map_coeffs<S: Coeff, E, F>(&self, ctx: &S::Ctx, mut f: F) -> Result<QSeries<S>, E>
    where
        F: FnMut(&R) -> Result<S, E>,
    {
        let mut out = QSeries::<S>::zero(ctx, self.order_cap);
        for (e, c) in &self.terms {
            out.terms.insert(*e, f(c)?);
        }
        out.prune();
        Ok(out)
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn pow(&self, n: i64) -> Result<Self, SeriesError> {
        if n < 0 {
            return self.reciprocal()?.pow(-n);
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.try_mul(&base)?,
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result.unwrap_or_else(|| Self::one(&self.ctx, self.order_cap)))
    }

    /// Inverse series. The lowest coefficient must be invertible.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let (&e0, c0) = self.terms.iter().next().ok_or(SeriesError::NotInvertible)?;
        let c0_inv = c0.inverse().ok_or(SeriesError::NotInvertible)?;
        let span = self.order_cap - e0;
        // normalized b = q^{-e0} a / c0 with b_0 = 1
        let b: Vec<(QExp, R)> = self.terms.iter().skip(1).map(|(e, c)| (*e - e0, c.mul(&c0_inv))).filter(|(_, c)| !c.vanishes()).collect();
        let mut r: BTreeMap<QExp, R> = BTreeMap::new();
        r.insert(QExp::ZERO, R::one_in(&self.ctx));
        for u in 1..=span.units() {
            let e = QExp::from_units(u);
            let mut acc: Option<R> = None;
            for (eb, cb) in &b {
                if *eb > e {
                    break;
                }
                if let Some(prev) = r.get(&(e - *eb)) {
                    acc.get_or_insert_with(|| R::zero_in(&self.ctx)).add_product(cb, prev);
                }
            }
            if let Some(acc) = acc.filter(|a| !a.vanishes()) {
                r.insert(e, acc.scale(&-Rational::one()));
            }
        }
        let out = QSeries { ctx: self.ctx.clone(), order_cap: span, terms: r };
        Ok(out.mul_coeff(&c0_inv).shift(-e0).truncate(self.order_cap - e0 * 2))
    }

    /// Exponential. The constant coefficient must be nilpotent and no
    /// exponent may be negative.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if self.low() < QExp::ZERO {
            return Err(SeriesError::NonNilpotent);
        }
        let x0 = self.coefficient(QExp::ZERO).unwrap_or_else(|_| R::zero_in(&self.ctx));
        if !x0.is_nilpotent() {
            return Err(SeriesError::NonNilpotent);
        }
        let y0 = x0.exp_nilpotent().ok_or(SeriesError::NonNilpotent)?;
        // e Y_e = Σ e' X_{e'} Y_{e-e'}
        let weighted: Vec<(QExp, R)> = self.terms.range(QExp::from_units(1)..).map(|(e, c)| (*e, c.scale(&int(e.units())))).collect();
        let mut y: BTreeMap<QExp, R> = BTreeMap::new();
        y.insert(QExp::ZERO, y0);
        for u in 1..=self.order_cap.units() {
            let e = QExp::from_units(u);
            let mut acc: Option<R> = None;
            for (ex, cx) in &weighted {
                if *ex > e {
                    break;
                }
                if let Some(prev) = y.get(&(e - *ex)) {
                    acc.get_or_insert_with(|| R::zero_in(&self.ctx)).add_product(cx, prev);
                }
            }
            if let Some(acc) = acc.filter(|a| !a.vanishes()) {
                y.insert(e, acc.scale(&int(u).recip()));
            }
        }
        let mut out = QSeries { ctx: self.ctx.clone(), order_cap: self.order_cap, terms: y };
        out.prune();
        Ok(out)
    }

    /// Logarithm. The constant coefficient must be `1 + nilpotent` and no
    /// exponent may be negative.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.low() < QExp::ZERO {
            return Err(SeriesError::NonUnipotent);
        }
        let a0 = self.coeff_ref(QExp::ZERO).ok_or(SeriesError::NonUnipotent)?;
        let y0 = a0.log_unipotent().ok_or(SeriesError::NonUnipotent)?;
        let a0_is_one = a0.as_rational().is_some_and(|r| r.is_one());
        let a0_inv = a0.inverse().ok_or(SeriesError::NonUnipotent)?;
        // e A_0 Y_e = e A_e - Σ_{0<e'<e} e' Y_{e'} A_{e-e'}
        let mut weighted_y: BTreeMap<QExp, R> = BTreeMap::new();
        let mut y: BTreeMap<QExp, R> = BTreeMap::new();
        if !y0.vanishes() {
            y.insert(QExp::ZERO, y0);
        }
        for u in 1..=self.order_cap.units() {
            let e = QExp::from_units(u);
            let mut acc = R::zero_in(&self.ctx);
            for (ey, cy) in &weighted_y {
                if let Some(a) = self.coeff_ref(e - *ey) {
                    acc.add_product(cy, a);
                }
            }
            let mut value = acc.scale(&-int(u).recip());
            if let Some(a) = self.coeff_ref(e) {
                value.add_assign(a);
            }
            if !a0_is_one {
                value = value.mul(&a0_inv);
            }
            if !value.vanishes() {
                weighted_y.insert(e, value.scale(&int(u)));
                y.insert(e, value);
            }
        }
        Ok(QSeries { ctx: self.ctx.clone(), order_cap: self.order_cap, terms: y })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_mul(&other.reciprocal()?)
    }
}

impl QSeries<Rational> {
    /// `q^e` with rational coefficient 1.
    pub fn q_power(e: QExp, order_cap: QExp) -> Self {
        Self::monomial(e, Rational::one(), order_cap)
    }

    /// Explicit Rational to GradedPoly promotion.
    pub fn promote(&self, ring: &Ring) -> QSeries<GradedPoly> {
        self.map_coeffs(ring, |c| GradedPoly::constant(ring, c.clone()))
    }
}

impl QSeries<GradedPoly> {
    /// Keeps only the cohomological degree `d` part of every coefficient.
    pub fn component(&self, d: u32) -> Self {
        self.map_coeffs(&self.ctx, |c| c.component(d))
    }

    /// Rational series when every coefficient is constant.
    pub fn to_scalar(&self) -> Option<QSeries<Rational>> {
        let mut out = QSeries::<Rational>::zero(&(), self.order_cap);
        for (e, c) in &self.terms {
            out.terms.insert(*e, c.as_constant()?);
        }
        Some(out)
    }

    pub fn substitute(&self, bindings: &[(&str, GradedPoly)]) -> Result<Self, SeriesError> {
        Ok(self.try_map_coeffs(&self.ctx, |c| c.substitute(bindings))?)
    }
}

/// Truncated product of factors `1 + O(q^{n step})` for `n = 1..=n_max`.
/// Errors when a factor past `n_max` could still reach `order_cap`.
pub fn product_form<R, F>(ctx: &R::Ctx, order_cap: QExp, step: QExp, n_max: u32, mut factor: F) -> Result<QSeries<R>, SeriesError>
where
    R: Coeff,
    F: FnMut(u32) -> QSeries<R>,
{
    let needed = product_threshold(order_cap, step);
    if n_max < needed {
        return Err(SeriesError::ProductTooShort { n_max, needed, cap: order_cap.to_string() });
    }
    let mut acc = QSeries::one(ctx, order_cap);
    for n in 1..=n_max {
        let f = factor(n).truncate(order_cap);
        let bound = step * n as i64;
        for (e, c) in &f.terms {
            let unit = *e == QExp::ZERO && c.as_rational().is_some_and(|r| r.is_one());
            if !unit && *e < bound {
                return Err(SeriesError::FactorTooLow { n, bound: bound.to_string() });
            }
        }
        if !f.terms.contains_key(&QExp::ZERO) {
            return Err(SeriesError::FactorTooLow { n, bound: bound.to_string() });
        }
        if f.len() > 1 {
            acc = acc.try_mul(&f)?.truncate(order_cap);
        }
    }
    Ok(acc.truncate(order_cap))
}

/// Smallest `n_max` for which every omitted factor starts above `order_cap`.
pub fn product_threshold(order_cap: QExp, step: QExp) -> u32 {
    if order_cap < QExp::ZERO || step.units() <= 0 {
        return 0;
    }
    (order_cap.units() / step.units()) as u32
}

impl<R: Coeff> fmt::Display for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (negative, body, unit) = c.signed_parts();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *e == QExp::ZERO {
                f.write_str(&body)?;
                continue;
            }
            if !unit {
                write!(f, "{body} ")?;
            }
            f.write_str(&render_power(*e))?;
        }
        Ok(())
    }
}

fn render_power(e: QExp) -> String {
    if e == QExp::ONE {
        "q".to_string()
    } else if e.is_integer() && e > QExp::ZERO {
        format!("q^{}", e.floor())
    } else {
        format!("q^{{{e}}}")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl<R: Coeff> $trait<&QSeries<R>> for &QSeries<R> {
            type Output = QSeries<R>;
            fn $method(self, rhs: &QSeries<R>) -> QSeries<R> {
                self.$inner(rhs).expect("q-series coefficient rings differ")
            }
        }
        impl<R: Coeff> $trait<QSeries<R>> for QSeries<R> {
            type Output = QSeries<R>;
            fn $method(self, rhs: QSeries<R>) -> QSeries<R> {
                (&self).$method(&rhs)
            }
        }
        impl<R: Coeff> $trait<&QSeries<R>> for QSeries<R> {
            type Output = QSeries<R>;
            fn $method(self, rhs: &QSeries<R>) -> QSeries<R> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<R: Coeff> Neg for &QSeries<R> {
    type Output = QSeries<R>;
    fn neg(self) -> QSeries<R> {
        self.neg_series()
    }
}

impl<R: Coeff> Neg for QSeries<R> {
    type Output = QSeries<R>;
    fn neg(self) -> QSeries<R> {
        self.neg_series()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, GeneratorTable};

    type S = QSeries<Rational>;

    fn cap(n: i64) -> QExp {
        QExp::int(n)
    }

    fn series(cap_n: i64, coeffs: &[i64]) -> S {
        S::from_terms(&(), cap(cap_n), coeffs.iter().enumerate().map(|(i, c)| (QExp::int(i as i64), int(*c))))
    }

    fn phi(order: i64) -> S {
        product_form(&(), cap(order), QExp::ONE, order as u32, |n| {
            S::from_terms(&(), cap(order), [(QExp::ZERO, int(1)), (QExp::int(n as i64), int(-1))])
        })
        .unwrap()
    }

    #[test]
    fn geometric_series() {
        let r = series(5, &[1, -1]).reciprocal().unwrap();
        assert_eq!(r, series(5, &[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn phi_powers() {
        let p = phi(6);
        assert_eq!(p.to_string(), "1 - q - q^2 + q^5");
        assert_eq!(p.pow(16).unwrap().truncate(cap(2)).to_string(), "1 - 16 q + 104 q^2");
        assert_eq!(p.pow(8).unwrap().truncate(cap(2)).to_string(), "1 - 8 q + 20 q^2");
        assert_eq!(p.pow(-8).unwrap().truncate(cap(2)).to_string(), "1 + 8 q + 44 q^2");
    }

    #[test]
    fn product_threshold_enforced() {
        let err = product_form(&(), cap(3), QExp::HALF, 5, |_| S::one(&(), cap(3)));
        assert!(matches!(err, Err(SeriesError::ProductTooShort { needed: 6, .. })));
        let low = product_form(&(), cap(3), QExp::ONE, 3, |_| S::from_terms(&(), cap(3), [(QExp::ZERO, int(1)), (QExp::HALF, int(1))]));
        assert!(matches!(low, Err(SeriesError::FactorTooLow { n: 1, .. })));
    }

    #[test]
    fn exp_and_log() {
        let q = S::q_power(QExp::ONE, cap(4));
        let e = q.exp().unwrap();
        assert_eq!(e.coefficient(QExp::int(2)).unwrap(), rat(1, 2));
        assert_eq!(e.coefficient(QExp::int(4)).unwrap(), rat(1, 24));
        assert_eq!(e.log().unwrap(), q);
        assert!(S::one(&(), cap(2)).exp().is_err());
        assert_eq!(S::zero(&(), cap(2)).exp().unwrap(), S::one(&(), cap(2)));
    }

    #[test]
    fn coefficient_beyond_cap() {
        let one = S::one(&(), cap(2));
        assert_eq!(one.coefficient(QExp::HALF).unwrap(), rat(0, 1));
        assert!(matches!(one.coefficient(cap(3)), Err(SeriesError::BeyondTruncation { .. })));
    }

    #[test]
    fn truncation_rules() {
        // q^{1/2} (cap 2) times (1 + q) (cap 2): the unknown tail of the first factor limits it to q^2
        let a = S::q_power(QExp::HALF, cap(2));
        let b = series(2, &[1, 1]);
        let p = &a * &b;
        assert_eq!(p.order_cap(), cap(2));
        assert_eq!(p.to_string(), "q^{1/2} + q^{3/2}");
        let r = a.reciprocal().unwrap();
        assert_eq!(r.to_string(), "q^{-1/2}");
        assert_eq!(r.order_cap(), cap(1));
    }

    #[test]
    fn rendering_with_forms() {
        let ring = GeneratorTable::new(&[("c", 2), ("s1", 4)], 4).unwrap();
        let s1 = GradedPoly::generator(&ring, "s1").unwrap();
        let c = GradedPoly::generator(&ring, "c").unwrap();
        let t = QSeries::from_terms(
            &ring,
            cap(2),
            [(QExp::ZERO, GradedPoly::one(&ring)), (QExp::ONE, s1.scale(&rat(-1, 24))), (QExp::int(2), &c + &s1)],
        );
        assert_eq!(t.to_string(), "1 - 1/24 s1 q + (c + s1) q^2");
    }

    #[test]
    fn nilpotent_exp_inverse() {
        let ring = GeneratorTable::new(&[("a", 4)], 12).unwrap();
        let a = GradedPoly::generator(&ring, "a").unwrap();
        let x = QSeries::from_terms(
            &ring,
            cap(3),
            [(QExp::ZERO, a.clone()), (QExp::ONE, a.pow(2)), (QExp::HALF, &a + &GradedPoly::one(&ring))],
        );
        let prod = x.exp().unwrap().try_mul(&(-&x).exp().unwrap()).unwrap();
        assert_eq!(prod, QSeries::one(&ring, cap(3)));
        assert_eq!(x.exp().unwrap().log().unwrap(), x);
    }
}
