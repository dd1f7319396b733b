use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use smallvec::SmallVec;

use super::rational::{format_rational, int, parse_rational, Rational};
use super::table::{same_ring, Ring};
use super::RingError;

/// Exponent vector, one entry per generator of the owning table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[u8; 16]>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(SmallVec::from_elem(0, len))
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Sparse polynomial in the generators of a [`GeneratorTable`](super::GeneratorTable),
/// truncated at its degree cap.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are equal.
#[derive(Clone)]
pub struct GradedPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for GradedPoly {}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly({})", self)
    }
}

fn monomial_degree(ring: &Ring, m: &Monomial) -> u32 {
    m.0.iter().zip(ring.degrees()).map(|(&e, &d)| e as u32 * d).sum()
}

impl GradedPoly {
    pub fn zero(ring: &Ring) -> Self {
        GradedPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, value: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !value.is_zero() {
            p.terms.insert(Monomial::one(ring.len()), value);
        }
        p
    }

    pub fn generator(ring: &Ring, name: &str) -> Result<Self, RingError> {
        let idx = ring.index_of(name).ok_or_else(|| RingError::UnknownGenerator(name.to_string()))?;
        Ok(Self::generator_at(ring, idx))
    }

    pub fn generator_at(ring: &Ring, index: usize) -> Self {
        let mut m = Monomial::one(ring.len());
        m.0[index] = 1;
        let mut p = Self::zero(ring);
        p.terms.insert(m, Rational::one());
        p
    }

    /// Builds a polynomial from `(coefficient, exponent vector)` pairs,
    /// merging duplicates and dropping terms over the cap.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (Rational, Vec<u8>)>,
    {
        let mut p = Self::zero(ring);
        for (c, exps) in terms {
            if exps.len() != ring.len() {
                return Err(RingError::Parse(format!("exponent vector has {} entries, ring has {} generators", exps.len(), ring.len())));
            }
            let m = Monomial(exps.into_iter().collect());
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || monomial_degree(&self.ring, &m) > self.ring.degree_cap() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        monomial_degree(&self.ring, m)
    }

    pub fn coefficient(&self, exponents: &[u8]) -> Rational {
        let m = Monomial(exponents.iter().copied().collect());
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree-0 coefficient.
    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.ring.len())).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(r)` when the polynomial is the constant `r`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Common degree of all terms, or `None` when mixed. Zero has no degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| self.degree_of(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.degree_of(m)).min()
    }

    fn check_ring(&self, other: &GradedPoly) -> Result<(), RingError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(RingError::ContextMismatch)
        }
    }

    fn expect_ring(&self, other: &GradedPoly) {
        if let Err(e) = self.check_ring(other) {
            panic!("{e}");
        }
    }

    pub fn try_add(&self, other: &GradedPoly) -> Result<GradedPoly, RingError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_assign_poly(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &GradedPoly) -> Result<GradedPoly, RingError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &GradedPoly) -> Result<GradedPoly, RingError> {
        self.check_ring(other)?;
        let mut out = GradedPoly::zero(&self.ring);
        out.add_product(self, other);
        Ok(out)
    }

    pub(crate) fn add_assign_poly(&mut self, other: &GradedPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += a * b`, truncated.
    pub(crate) fn add_product(&mut self, a: &GradedPoly, b: &GradedPoly) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let cap = self.ring.degree_cap();
        let mut bs: Vec<(u32, &Monomial, &Rational)> = b.terms.iter().map(|(m, c)| (b.degree_of(m), m, c)).collect();
        bs.sort_by_key(|t| t.0);
        for (ma, ca) in &a.terms {
            let da = a.degree_of(ma);
            for &(db, mb, cb) in &bs {
                if da + db > cap {
                    break;
                }
                self.add_term(ma.product(mb), ca * cb);
            }
        }
    }

    /// `self += r * a`.
    pub(crate) fn add_scaled(&mut self, a: &GradedPoly, r: &Rational) {
        if r.is_zero() {
            return;
        }
        for (m, c) in &a.terms {
            self.add_term(m.clone(), c * r);
        }
    }

    pub fn scale(&self, r: &Rational) -> GradedPoly {
        if r.is_zero() {
            return GradedPoly::zero(&self.ring);
        }
        GradedPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect() }
    }

    pub fn pow(&self, n: u32) -> GradedPoly {
        let mut result = GradedPoly::one(&self.ring);
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Truncated exponential `Σ a^k/k!`. The sum is finite because a
    /// polynomial with zero constant term is nilpotent under truncation.
    pub fn exp(&self) -> Result<GradedPoly, RingError> {
        if !self.constant_term().is_zero() {
            return Err(RingError::NonZeroConstant);
        }
        let mut result = GradedPoly::one(&self.ring);
        let mut power = GradedPoly::one(&self.ring);
        let mut k = 0i64;
        loop {
            k += 1;
            power = (&power * self).scale(&Rational::new(1.into(), k.into()));
            if power.is_zero() {
                break;
            }
            result.add_assign_poly(&power);
        }
        Ok(result)
    }

    /// Logarithm of a polynomial with constant term 1.
    pub fn log(&self) -> Result<GradedPoly, RingError> {
        if !self.constant_term().is_one() {
            return Err(RingError::NonUnitConstant);
        }
        let n = self - &GradedPoly::one(&self.ring);
        let mut result = GradedPoly::zero(&self.ring);
        let mut power = GradedPoly::one(&self.ring);
        let mut k = 0i64;
        loop {
            k += 1;
            power = &power * &n;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            result.add_scaled(&power, &Rational::new(sign.into(), k.into()));
        }
        Ok(result)
    }

    /// Multiplicative inverse; exists exactly when the constant term is nonzero.
    pub fn inverse(&self) -> Result<GradedPoly, RingError> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(RingError::NotInvertible);
        }
        let c_inv = c.recip();
        let one = GradedPoly::one(&self.ring);
        // self = c (1 + n)  =>  self^-1 = c^-1 Σ (-n)^k
        let minus_n = &one - &self.scale(&c_inv);
        let mut result = one.clone();
        let mut power = one;
        loop {
            power = &power * &minus_n;
            if power.is_zero() {
                break;
            }
            result.add_assign_poly(&power);
        }
        Ok(result.scale(&c_inv))
    }

    /// Sum of the terms of exactly the given total degree.
    pub fn component(&self, degree: u32) -> GradedPoly {
        GradedPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| self.degree_of(m) == degree).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Replaces the degree-`d` component by `k^(d/2)` times itself.
    pub fn scale_by_degree(&self, k: i64) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let half = self.degree_of(m) / 2;
            out.add_term(m.clone(), c * int(k).pow(half as i32));
        }
        out
    }

    /// Ring homomorphism fixing every generator not named in `bindings`.
    /// Each replacement must be homogeneous of the replaced generator's degree.
    pub fn substitute(&self, bindings: &[(&str, GradedPoly)]) -> Result<GradedPoly, RingError> {
        let mut repl: Vec<Option<&GradedPoly>> = vec![None; self.ring.len()];
        for (name, value) in bindings {
            let idx = self.ring.index_of(name).ok_or_else(|| RingError::UnknownGenerator(name.to_string()))?;
            self.check_ring(value)?;
            if let Some(d) = value.homogeneous_degree() {
                if d != self.ring.degree(idx) {
                    return Err(RingError::InhomogeneousBinding(name.to_string()));
                }
            } else if !value.is_zero() {
                return Err(RingError::InhomogeneousBinding(name.to_string()));
            }
            repl[idx] = Some(value);
        }
        let mut powers: Vec<Vec<GradedPoly>> = vec![Vec::new(); self.ring.len()];
        let mut out = GradedPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut kept = Monomial::one(self.ring.len());
            let mut factor = GradedPoly::one(&self.ring);
            for (idx, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match repl[idx] {
                    None => kept.0[idx] = e,
                    Some(value) => {
                        let cache = &mut powers[idx];
                        if cache.is_empty() {
                            cache.push(GradedPoly::one(&self.ring));
                        }
                        while cache.len() <= e as usize {
                            let next = cache.last().unwrap() * value;
                            cache.push(next);
                        }
                        factor = &factor * &cache[e as usize];
                    }
                }
            }
            let mut kept_poly = GradedPoly::zero(&self.ring);
            kept_poly.add_term(kept, c.clone());
            out.add_product(&kept_poly, &factor);
        }
        Ok(out)
    }

    /// Evaluates at rational generator values.
    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.ring.len(), "one value per generator");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (&e, v) in m.0.iter().zip(values) {
                if e > 0 {
                    t *= v.pow(e as i32);
                }
            }
            total += t;
        }
        total
    }

    /// Terms in canonical order: increasing degree, then lexicographic by
    /// generator table order with higher exponents of earlier generators first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| self.degree_of(a).cmp(&self.degree_of(b)).then_with(|| b.cmp(a)));
        v
    }

    fn render_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (idx, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.ring.name(idx).to_string()),
                _ => parts.push(format!("{}^{}", self.ring.name(idx), e)),
            }
        }
        parts.join("*")
    }

    /// True when rendering needs parentheses to act as a coefficient.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }

    /// Parses the canonical rendering (e.g. `1 - 1/24 s1 + 7/5760 s1^2*c`).
    pub fn parse(ring: &Ring, text: &str) -> Result<GradedPoly, RingError> {
        let mut out = GradedPoly::zero(ring);
        let text = text.trim();
        if text.is_empty() {
            return Err(RingError::Parse("empty polynomial".into()));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        for ch in text.chars() {
            if ch == '+' || ch == '-' {
                if !current.trim().is_empty() {
                    pieces.push((negative, std::mem::take(&mut current)));
                    negative = ch == '-';
                } else if ch == '-' {
                    negative = !negative;
                }
            } else {
                current.push(ch);
            }
        }
        if current.trim().is_empty() {
            return Err(RingError::Parse(format!("dangling sign in {text:?}")));
        }
        pieces.push((negative, current));
        for (neg, piece) in pieces {
            let piece = piece.trim();
            let (coef_str, mono_str) = split_coefficient(piece);
            let mut coef = match coef_str {
                Some(s) => parse_rational(s)?,
                None => Rational::one(),
            };
            if neg {
                coef = -coef;
            }
            let mut m = Monomial::one(ring.len());
            let mono_str = mono_str.trim().trim_start_matches('*').trim();
            if !mono_str.is_empty() {
                for factor in mono_str.split('*') {
                    let factor = factor.trim();
                    let (name, e) = match factor.split_once('^') {
                        Some((n, e)) => {
                            let e: u8 = e.trim().parse().map_err(|_| RingError::Parse(format!("bad exponent in {factor:?}")))?;
                            (n.trim(), e)
                        }
                        None => (factor, 1),
                    };
                    let idx = ring.index_of(name).ok_or_else(|| RingError::UnknownGenerator(name.to_string()))?;
                    m.0[idx] = m.0[idx].checked_add(e).ok_or_else(|| RingError::Parse("exponent overflow".into()))?;
                }
            } else if coef_str.is_none() {
                return Err(RingError::Parse(format!("empty term in {text:?}")));
            }
            out.add_term(m, coef);
        }
        Ok(out)
    }
}

fn split_coefficient(piece: &str) -> (Option<&str>, &str) {
    let end = piece.find(|c: char| !(c.is_ascii_digit() || c == '/' || c.is_whitespace())).unwrap_or(piece.len());
    let coef = piece[..end].trim();
    if coef.is_empty() {
        (None, piece)
    } else {
        (Some(coef), &piece[end..])
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            let mono = self.render_monomial(m);
            let body = if mono.is_empty() {
                format_rational(&abs)
            } else if abs.is_one() {
                mono
            } else {
                format!("{} {}", format_rational(&abs), mono)
            };
            match (i, negative) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait<&GradedPoly> for &GradedPoly {
            type Output = GradedPoly;
            fn $method(self, rhs: &GradedPoly) -> GradedPoly {
                self.expect_ring(rhs);
                self.$try(rhs).unwrap()
            }
        }
        impl std::ops::$trait<GradedPoly> for GradedPoly {
            type Output = GradedPoly;
            fn $method(self, rhs: GradedPoly) -> GradedPoly {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&GradedPoly> for GradedPoly {
            type Output = GradedPoly;
            fn $method(self, rhs: &GradedPoly) -> GradedPoly {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::rat;
    use crate::ring::GeneratorTable;

    fn ring12() -> Ring {
        GeneratorTable::new(&[("s1", 4), ("s2", 8), ("s3", 12)], 12).unwrap()
    }

    fn ring14c() -> Ring {
        GeneratorTable::new(&[("c", 2), ("s1", 4), ("gi1", 4), ("gj1", 4)], 14).unwrap()
    }

    #[test]
    fn mul_c_c() {
        let r = ring14c();
        let c = GradedPoly::generator(&r, "c").unwrap();
        let c2 = &c * &c;
        assert_eq!(c2.to_string(), "c^2");
        assert_eq!(c2.homogeneous_degree(), Some(4));
    }

    #[test]
    fn pow_truncates() {
        let r = ring12();
        let s1 = GradedPoly::generator(&r, "s1").unwrap();
        assert!(s1.pow(4).is_zero());
        assert_eq!(s1.pow(3).to_string(), "s1^3");
    }

    #[test]
    fn difference_of_squares() {
        let r = ring12();
        let one = GradedPoly::one(&r);
        let s1 = GradedPoly::generator(&r, "s1").unwrap();
        let p = &(&one + &s1) * &(&one - &s1);
        assert_eq!(p, &one - &(&s1 * &s1));
    }

    #[test]
    fn exp_terminates() {
        let r = ring12();
        let s1 = GradedPoly::generator(&r, "s1").unwrap();
        let e = s1.exp().unwrap();
        assert_eq!(e.to_string(), "1 + s1 + 1/2 s1^2 + 1/6 s1^3");
        assert_eq!(GradedPoly::zero(&r).exp().unwrap(), GradedPoly::one(&r));
        assert!(GradedPoly::one(&r).exp().is_err());
    }

    #[test]
    fn exp_degree8_component() {
        // multinomial expansion by hand: exp(s1 + s2) at degree 8 is s2 + s1^2/2
        let r = ring12();
        let s1 = GradedPoly::generator(&r, "s1").unwrap();
        let s2 = GradedPoly::generator(&r, "s2").unwrap();
        let e = (&s1 + &s2).exp().unwrap();
        assert_eq!(e.component(8), &s2 + &(&s1 * &s1).scale(&rat(1, 2)));
    }

    #[test]
    fn component_extraction() {
        let r = ring12();
        let s1 = GradedPoly::generator(&r, "s1").unwrap();
        let p = &(&GradedPoly::one(&r) + &s1) + &(&s1 * &s1);
        assert_eq!(p.component(8), &s1 * &s1);
        assert!(p.component(6).is_zero());
    }

    #[test]
    fn substitution_encodes_constraint() {
        let r = ring14c();
        let p = GradedPoly::parse(&r, "s1 - c^2 - gi1 - gj1").unwrap();
        let repl = GradedPoly::parse(&r, "c^2 + gi1 + gj1").unwrap();
        assert!(p.substitute(&[("s1", repl)]).unwrap().is_zero());
    }

    #[test]
    fn substitution_rejects_wrong_degree() {
        let r = ring14c();
        let p = GradedPoly::parse(&r, "s1").unwrap();
        let c = GradedPoly::generator(&r, "c").unwrap();
        assert!(matches!(p.substitute(&[("s1", c)]), Err(RingError::InhomogeneousBinding(_))));
    }

    #[test]
    fn mismatched_rings() {
        let a = GradedPoly::one(&ring12());
        let b = GradedPoly::one(&ring14c());
        assert!(matches!(a.try_mul(&b), Err(RingError::ContextMismatch)));
    }

    #[test]
    fn inverse_and_log() {
        let r = ring12();
        let p = GradedPoly::parse(&r, "2 + s1 - 3 s2").unwrap();
        assert_eq!(&p * &p.inverse().unwrap(), GradedPoly::one(&r));
        let q = GradedPoly::parse(&r, "s1 + 1/3 s2").unwrap();
        assert_eq!(q.exp().unwrap().log().unwrap(), q);
    }

    #[test]
    fn render_and_parse() {
        let r = ring14c();
        let p = GradedPoly::parse(&r, "-1/24 s1 + c^2*gi1 - 3 + c").unwrap();
        assert_eq!(p.to_string(), "-3 + c - 1/24 s1 + c^2*gi1");
        assert_eq!(GradedPoly::parse(&r, &p.to_string()).unwrap(), p);
        assert_eq!(GradedPoly::parse(&r, "0").unwrap().to_string(), "0");
        assert!(GradedPoly::parse(&r, "x1").is_err());
        assert!(GradedPoly::parse(&r, "s1 +").is_err());
    }
}
