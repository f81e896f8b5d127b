//! Independent route to the Wigner data: explicit L-operators built from
//! generator matrices on realized modules, their characteristic matrices and
//! the spectral projectors.

pub mod checks;
pub mod expr;
pub mod extract;
pub mod linalg;
pub mod lop;
pub mod matrix;
pub mod module;
pub mod realize;
pub mod suite;

pub use lop::{CharKind, LBuilder, LKind};
pub use matrix::Matrix;
pub use module::RepModule;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("characteristic roots coincide at index pairs {0:?}")]
    DegenerateRoots(Vec<(usize, usize)>),
    #[error("{count} candidate vectors where one was expected")]
    MultiplicityAmbiguous { count: usize },
    #[error("{0} is not realized in the module")]
    NotRealized(String),
    #[error("operator is not a scalar multiple of the identity")]
    NotScalar,
    #[error("module is not completely reducible over the subalgebra")]
    NotCompletelyReducible,
}
