//! Exact branching data, reduced Wigner coefficients and invariants for
//! the quantum superalgebra U_q[gl(m|n)], with an independent L-operator
//! oracle that rebuilds the same quantities from explicit matrices.

pub mod branching;
pub mod exactq;
pub mod field;
pub mod invariants;
pub mod oracle;
pub mod superweight;
pub mod wigner;

pub use exactq::{ExactError, HalfLaurent, QFraction};
pub use field::Field;

/// Matrices and modules over the exact field Q(q^{1/2}).
pub type ExactMatrix = oracle::Matrix<QFraction>;
pub type ExactModule = oracle::RepModule<QFraction>;
/// The same objects evaluated at a numeric `q`.
pub type NumericMatrix = oracle::Matrix<f64>;
pub type NumericModule = oracle::RepModule<f64>;
