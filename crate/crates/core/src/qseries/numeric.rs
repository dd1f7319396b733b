use std::f64::consts::PI;

use num::complex::Complex64;

use super::{QSeries, SeriesError};
use crate::ring::{to_f64, Rational};

/// `Σ c q^e` at `q^e = exp(2πi τ e)`.
pub fn eval_numeric(series: &QSeries<Rational>, tau: Complex64) -> Result<Complex64, SeriesError> {
    if tau.im <= 0.0 {
        return Err(SeriesError::NotInUpperHalfPlane);
    }
    let two_pi_i_tau = Complex64::new(0.0, 2.0 * PI) * tau;
    Ok(series.terms().map(|(e, c)| (two_pi_i_tau * e.to_f64()).exp() * to_f64(c)).sum())
}

/// Heuristic bound on the omitted tail: `max(1, max|c|) |q|^cap / (1 - |q|)`.
pub fn tail_bound(series: &QSeries<Rational>, tau: Complex64) -> f64 {
    let abs_q = (-2.0 * PI * tau.im).exp();
    let max_coeff = series.terms().map(|(_, c)| to_f64(c).abs()).fold(1.0, f64::max);
    max_coeff * abs_q.powf(series.order_cap().to_f64()) / (1.0 - abs_q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::QExp;

    #[test]
    fn nome_at_i() {
        let q = QSeries::q_power(QExp::ONE, QExp::int(2));
        let v = eval_numeric(&q, Complex64::new(0.0, 1.0)).unwrap();
        assert!((v.re - (-2.0 * PI).exp()).abs() < 1e-15 && v.im.abs() < 1e-15);
        let one = QSeries::one(&(), QExp::int(2));
        assert_eq!(eval_numeric(&one, Complex64::new(0.3, 0.1)).unwrap(), Complex64::new(1.0, 0.0));
        assert!(eval_numeric(&one, Complex64::new(0.3, -0.1)).is_err());
    }
}
