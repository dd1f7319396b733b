//! Truncated univariate power series with rational coefficients. Used to
//! produce the Taylor coefficients of the one-root genus factors.

use num::{One, Zero};

use super::rational::{inv_factorial, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct Taylor {
    coeffs: Vec<Rational>,
}

impl Taylor {
    /// Series known through `x^max_power`.
    pub fn new(mut coeffs: Vec<Rational>, max_power: usize) -> Self {
        coeffs.resize(max_power + 1, Rational::zero());
        Taylor { coeffs }
    }

    pub fn max_power(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `sinh(x)/x`
    pub fn sinh_over_x(max_power: usize) -> Self {
        let coeffs = (0..=max_power).map(|k| if k % 2 == 0 { inv_factorial(k as u32 + 1) } else { Rational::zero() }).collect();
        Taylor { coeffs }
    }

    /// `cosh(x)`
    pub fn cosh(max_power: usize) -> Self {
        let coeffs = (0..=max_power).map(|k| if k % 2 == 0 { inv_factorial(k as u32) } else { Rational::zero() }).collect();
        Taylor { coeffs }
    }

    /// Substitutes `x -> a x`.
    pub fn rescale(&self, a: &Rational) -> Self {
        let mut factor = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * &factor;
                factor *= a;
                v
            })
            .collect();
        Taylor { coeffs }
    }

    pub fn mul(&self, other: &Taylor) -> Taylor {
        let n = self.max_power().min(other.max_power());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Taylor { coeffs: out }
    }

    /// Requires a nonzero constant term.
    pub fn recip(&self) -> Option<Taylor> {
        let a0 = self.coeffs[0].clone();
        if a0.is_zero() {
            return None;
        }
        let n = self.max_power();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = a0.recip();
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -s * &out[0];
        }
        Some(Taylor { coeffs: out })
    }

    /// Requires constant term 1. Uses `log f = ∫ f'/f`.
    pub fn log(&self) -> Option<Taylor> {
        if !self.coeffs[0].is_one() {
            return None;
        }
        let n = self.max_power();
        let inv = self.recip()?;
        let deriv: Vec<Rational> = (1..=n).map(|k| &self.coeffs[k] * Rational::from_integer(k.into())).collect();
        let deriv = Taylor::new(deriv, n.saturating_sub(1));
        let q = deriv.mul(&Taylor::new(inv.coeffs[..n].to_vec(), n.saturating_sub(1)));
        let mut out = vec![Rational::zero(); n + 1];
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            *slot = q.coeff(k - 1) / Rational::from_integer(k.into());
        }
        Some(Taylor { coeffs: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::rat;

    #[test]
    fn log_of_a_hat_factor() {
        // (x/2)/sinh(x/2): log = -x^2/24 + x^4/2880 - x^6/181440
        let f = Taylor::sinh_over_x(8).rescale(&rat(1, 2)).recip().unwrap();
        let l = f.log().unwrap();
        assert_eq!(l.coeff(2), rat(-1, 24));
        assert_eq!(l.coeff(4), rat(1, 2880));
        assert_eq!(l.coeff(6), rat(-1, 181440));
        assert_eq!(l.coeff(3), rat(0, 1));
    }

    #[test]
    fn cosh_times_recip() {
        let c = Taylor::cosh(6);
        assert_eq!(c.mul(&c.recip().unwrap()), Taylor::new(vec![rat(1, 1)], 6));
    }
}
