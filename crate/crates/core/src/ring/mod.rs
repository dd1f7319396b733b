//! Exact rational scalars and sparse graded polynomials truncated at a
//! cohomological degree cap.

mod newton;
mod poly;
mod rational;
mod table;
pub mod taylor;

pub use newton::{newton_convert, NewtonDirection};
pub use poly::{GradedPoly, Monomial};
pub use rational::{factorial, format_rational, int, inv_factorial, parse_rational, rat, to_f64, Rational};
pub use table::{GeneratorTable, Ring};

pub(crate) use table::same_ring;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("generator {name:?} has degree {degree}; degrees must be positive and even")]
    OddDegree { name: String, degree: u32 },
    #[error("generator {name:?} has degree {degree} above the cap {cap}")]
    DegreeExceedsCap { name: String, degree: u32, cap: u32 },
    #[error("operands belong to different generator tables")]
    ContextMismatch,
    #[error("exponential needs a zero constant term")]
    NonZeroConstant,
    #[error("logarithm needs constant term 1")]
    NonUnitConstant,
    #[error("polynomial with zero constant term is not invertible")]
    NotInvertible,
    #[error("replacement for {0:?} is not homogeneous of the generator's degree")]
    InhomogeneousBinding(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("{given} values given but only {variables} variables")]
    TooManyValues { given: usize, variables: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
