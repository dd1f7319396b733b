//! Named q-series: normalized theta functions, `φ` powers, Eisenstein series
//! and the level-2 forms `δ`, `ε`, plus numeric transformation checks.
//!
//! Normalization: with `z = 2πi v`, `θ(v,τ) = -i NΘ(z)`, `θ_k(v,τ) = NΘ_k(z)`
//! and `θ'(0,τ) = 2π NΘ'(0)`. No `π` or `i` ever enters exact data.

mod forms;
mod laws;
mod theta;

pub use forms::{delta_eps, eisenstein, integer_series, named_series, DeltaEps, SERIES_NAMES};
pub use laws::{check_transformation_numeric, theta_numeric, LawCheck, DEFAULT_TAUS, LAW_IDS, SAMPLE_V};
pub use theta::{
    phi, phi_pow, theta, theta_const, theta_line_quotient, theta_over_arg, theta_prime_zero, theta_ratio, z_theta_prime_over_theta,
    ThetaKind,
};

use thiserror::Error;

use crate::qseries::SeriesError;
use crate::ring::RingError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModError {
    #[error("theta argument {0} must be a degree-2 form")]
    ArgumentDegree(String),
    #[error("no Eisenstein series of weight {0}")]
    UnsupportedWeight(u32),
    #[error("unknown series {0:?}")]
    UnknownSeries(String),
    #[error("unknown transformation law {0:?}")]
    UnknownLaw(String),
    #[error("tau must lie in the upper half-plane")]
    NotInUpperHalfPlane,
    #[error("truncation tail bound {bound:.3e} exceeds tolerance {tol:.1e}; raise the q-order")]
    TailTooLarge { bound: f64, tol: f64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Ring(#[from] RingError),
}
