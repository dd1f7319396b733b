//! Assembles the anomaly q-series, fits them against modular-form bases and
//! checks each stated cancellation identity as an exact equality of forms.
//!
//! Modularity is certified, not proved: a fit is solved on the lowest
//! exponents and every further coefficient up to the requested order must
//! vanish in the residual.

mod fit;
mod report;
mod suite;
mod swap;
mod symbolic;
mod theorems;
mod variant;

pub use fit::{basis, fit, fit_gamma, fit_sl2z, Group, ModularFitResult};
pub use report::{ConstantCheck, JsonConstant, JsonReport, Status, Summary, TheoremReport};
pub use suite::{run_suite, select};
pub use swap::{check_h_displays, gamma_swap_check, swap_pair, DisplayCheck, DisplayConstants, SwapPair};
pub use theorems::{expm1_over, verify_theorem, ConstantOverride, VerifyOptions, THEOREM_IDS};
pub use variant::{build_q, build_q_top, build_q_via, Route, SeriesVariant, VariantId};

use thiserror::Error;

use crate::charforms::CharError;
use crate::modforms::ModError;
use crate::qseries::{QExp, SeriesError};
use crate::ring::RingError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("no basis for weight {weight} over {group}")]
    UnsupportedWeight { group: Group, weight: u32 },
    #[error("series known through q^{have}; this needs q^{need}")]
    InsufficientOrder { have: QExp, need: QExp },
    #[error("fit system is singular")]
    SingularFit,
    #[error("unknown series variant {0:?}")]
    BadVariant(String),
    #[error("malformed constant override {0:?}; expected THEOREM:NAME=VALUE")]
    BadOverride(String),
    #[error("{0}")]
    BadOption(String),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Modular(#[from] ModError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Ring(#[from] RingError),
}
