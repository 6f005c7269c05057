use thiserror::Error;

use crate::algebra::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("algebra axioms fail: {0}")]
    InvalidAlgebra(ValidationReport),

    #[error("module axioms fail: {0}")]
    InvalidModule(ValidationReport),

    #[error("values belong to different modules")]
    ModuleMismatch,

    #[error("cochain of degree {degree} is not a cocycle")]
    NotACocycle { degree: usize },

    #[error("not an approximate deformation: relation fails at order {order}")]
    NotADeformation { order: usize },

    #[error("guardrail exceeded: {0}")]
    Guardrail(String),
}
