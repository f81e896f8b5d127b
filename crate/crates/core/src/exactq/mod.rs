//! Exact arithmetic in Q(q^{1/2}): half-integer Laurent polynomials, reduced
//! fractions, q-numbers, numeric evaluation and the q -> 1 limit.

mod fraction;
mod laurent;
mod parse;
mod poly;

pub use fraction::QFraction;
pub use laurent::{qhalf, qnum, HalfLaurent};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = {0}")]
    PoleAtPoint(f64),
    #[error("denominator vanishes at q = 1")]
    PoleAtOne,
    #[error("evaluation point must be positive, got {0}")]
    BadPoint(f64),
    #[error("exponent {0} is not a half-integer")]
    NotHalfInteger(String),
    #[error("integer overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

/// `(1 - q^{-2x}) / (q - q^{-1})`, the deformation of a classical root `x`.
pub fn deformed_root(x: i64) -> QFraction {
    QFraction::qhalf(-2 * x) * QFraction::qnum(x)
}
