//! Terminating hypergeometric sums, Hahn and dual Hahn polynomials, and the
//! two polynomial families `q̃_m` (spinor) and `q_m` (function) in closed
//! form and three-term-recurrence form.

use thiserror::Error;

use crate::exact::Rational;

mod hahn;
mod hypergeometric;
mod qfamily;

pub use hahn::{dual_hahn_r, hahn_q, HahnParams};
pub use hypergeometric::hyp_pfq_terminating;
pub use qfamily::{
    dual_hahn_identity, dual_hahn_identity_check, q_closed, q_closed_at, q_recurrence, recurrence_coefficients,
    three_term, DualHahnSides, Family, QFamilySpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("series does not terminate: no nonpositive integer upper parameter")]
    NonTerminating,
    #[error("lower parameter {parameter} gives a zero Pochhammer symbol at index {index}")]
    ZeroDenominator { parameter: Rational, index: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}
