//! Truncated series in the nome q. Exponents live on the 1/24 grid and
//! coefficients are exact rationals or graded polynomials.

mod coeff;
mod exponent;
mod numeric;
mod series;

pub use coeff::Coeff;
pub use exponent::QExp;
pub use numeric::{eval_numeric, tail_bound};
pub use series::{product_form, product_threshold, QSeries};

use thiserror::Error;

use crate::ring::RingError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("exponent {0} is not a multiple of 1/24")]
    OffGrid(String),
    #[error("series have different coefficient rings")]
    ContextMismatch,
    #[error("leading coefficient is not invertible")]
    NotInvertible,
    #[error("exponential needs nilpotent constant coefficient and no negative exponents")]
    NonNilpotent,
    #[error("logarithm needs a unipotent constant coefficient and no negative exponents")]
    NonUnipotent,
    #[error("coefficient of q^{requested} requested beyond the truncation q^{cap}")]
    BeyondTruncation { requested: String, cap: String },
    #[error("product truncated at n = {n_max} but factors up to n = {needed} reach q^{cap}")]
    ProductTooShort { n_max: u32, needed: u32, cap: String },
    #[error("factor {n} differs from 1 below q^{bound}")]
    FactorTooLow { n: u32, bound: String },
    #[error("numeric evaluation needs rational coefficients")]
    FormValued,
    #[error("tau must lie in the upper half-plane")]
    NotInUpperHalfPlane,
    #[error(transparent)]
    Ring(#[from] RingError),
}
