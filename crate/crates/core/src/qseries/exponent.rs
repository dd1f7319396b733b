use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer};

use super::SeriesError;
use crate::ring::{parse_rational, Rational};

/// Exponent of the nome, an integer multiple of 1/24.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QExp(i64);

impl QExp {
    /// Grid denominator.
    pub const GRID: i64 = 24;
    pub const ZERO: QExp = QExp(0);
    pub const ONE: QExp = QExp(24);
    pub const HALF: QExp = QExp(12);
    pub const EIGHTH: QExp = QExp(3);

    pub const fn from_units(units: i64) -> Self {
        QExp(units)
    }

    pub const fn int(n: i64) -> Self {
        QExp(n * Self::GRID)
    }

    /// `num/den`, which must lie on the 1/24 grid.
    pub fn new(num: i64, den: i64) -> Result<Self, SeriesError> {
        if den == 0 || (num * Self::GRID) % den != 0 {
            return Err(SeriesError::OffGrid(format!("{num}/{den}")));
        }
        Ok(QExp(num * Self::GRID / den))
    }

    pub fn from_rational(r: &Rational) -> Result<Self, SeriesError> {
        let scaled = r * Rational::from_integer(BigInt::from(Self::GRID));
        if !scaled.is_integer() {
            return Err(SeriesError::OffGrid(crate::ring::format_rational(r)));
        }
        use num::ToPrimitive;
        scaled.to_integer().to_i64().map(QExp).ok_or_else(|| SeriesError::OffGrid(r.to_string()))
    }

    pub fn parse(text: &str) -> Result<Self, SeriesError> {
        let r = parse_rational(text).map_err(|_| SeriesError::OffGrid(text.to_string()))?;
        Self::from_rational(&r)
    }

    pub const fn units(self) -> i64 {
        self.0
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.0.into(), Self::GRID.into())
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / Self::GRID as f64
    }

    pub fn is_integer(self) -> bool {
        self.0 % Self::GRID == 0
    }

    /// True when the exponent is a multiple of `step`.
    pub fn is_multiple_of(self, step: QExp) -> bool {
        step.0 != 0 && self.0 % step.0 == 0
    }

    /// Largest integer not above the exponent.
    pub fn floor(self) -> i64 {
        Integer::div_floor(&self.0, &Self::GRID)
    }
}

impl fmt::Display for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::ring::format_rational(&self.to_rational()).fmt(f)
    }
}

impl Add for QExp {
    type Output = QExp;
    fn add(self, rhs: QExp) -> QExp {
        QExp(self.0 + rhs.0)
    }
}

impl Sub for QExp {
    type Output = QExp;
    fn sub(self, rhs: QExp) -> QExp {
        QExp(self.0 - rhs.0)
    }
}

impl Neg for QExp {
    type Output = QExp;
    fn neg(self) -> QExp {
        QExp(-self.0)
    }
}

impl Mul<i64> for QExp {
    type Output = QExp;
    fn mul(self, rhs: i64) -> QExp {
        QExp(self.0 * rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid() {
        assert_eq!(QExp::new(1, 8).unwrap(), QExp::EIGHTH);
        assert_eq!(QExp::new(3, 2).unwrap().to_string(), "3/2");
        assert!(QExp::new(1, 5).is_err());
        assert_eq!(QExp::parse("6").unwrap(), QExp::int(6));
        assert_eq!(QExp::new(-1, 24).unwrap().floor(), -1);
        assert!(QExp::int(2).is_multiple_of(QExp::HALF));
        assert!(!QExp::EIGHTH.is_multiple_of(QExp::HALF));
    }
}
