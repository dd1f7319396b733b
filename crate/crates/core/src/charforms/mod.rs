//! Characteristic forms over a manifold context: genera, Chern characters
//! with their λ-ring operations, the E8 character, and the Witten-bundle
//! q-expansions by two independent routes.
//!
//! Everything is written in normalized power sums: tangent `s_k = Σ z_j^{2k}`
//! over Chern-root pairs, E8 `g_{b,k} = Σ_l w_l^{2k}` over the eight formal
//! roots, and `c` the first Chern class of the spin^c line bundle.

mod chern;
mod context;
mod e8;
mod genus;
mod witten;

pub use chern::{ch_line, ch_tangent, lambda_sym, ChernCharacterData, LambdaOp, LineCh};
pub use context::{ManifoldContext, Structure, BUNDLE_LABELS};
pub use e8::{e8_character, extract_w};
pub use genus::{a_hat, anomaly_class, l_hat, l_hat_hirzebruch, AnomalyClass};
pub use witten::{
    direct_integrand, genus_factor, line_factor, resolve_l_convention, witten_direct, witten_theta, ConventionOutcome, ConventionReport,
    LineConvention, LineFactor, Twist,
};

use thiserror::Error;

use crate::modforms::ModError;
use crate::qseries::SeriesError;
use crate::ring::RingError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharError {
    #[error("unsupported dimension {0}; expected 10, 12 or 14")]
    UnsupportedDimension(u32),
    #[error("{0} E8 bundles requested; at most 2 are modelled")]
    TooManyBundles(usize),
    #[error("generator {0:?} is not in this context")]
    MissingGenerator(String),
    #[error("the line bundle needs a spin^c context")]
    NotSpinC,
    #[error("twist {0:?} does not fit this context")]
    UnsupportedTwist(Twist),
    #[error("wrong number of arguments ({0}) for this operation")]
    Arity(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Modular(#[from] ModError),
}
