use thiserror::Error;

/// Errors raised by algebra construction, evaluation and the verification stages.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a zero quaternion")]
    ZeroDivision,

    #[error(
        "structure constants are not associative: (e{i}e{j})e{k} and e{i}(e{j}e{k}) differ by {residual:e} in coordinate {l}"
    )]
    AssociativityViolation {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        residual: f64,
    },

    #[error("declared unit is not a two-sided identity (residual {residual:e})")]
    BadUnit { residual: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("operation requires a unital algebra")]
    NotUnital,

    #[error("subspace is not a two-sided ideal (residual {residual:e})")]
    NotAnIdeal { residual: f64 },

    #[error("quotient by the whole algebra is the zero algebra")]
    ZeroQuotient,

    #[error("Gelfand radius did not converge: last delta {delta:e} after {iterations} squarings")]
    NonConvergence { delta: f64, iterations: usize },

    #[error("seminorm payload does not match the algebra: {0}")]
    PayloadMismatch(String),

    #[error("seminorm variant `{0}` has no structured kernel")]
    UnsupportedVariant(String),

    #[error("character set is empty")]
    EmptyCharacterSet,

    #[error("invalid input in `{field}`: {message}")]
    InvalidInput { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidInput {
            field: field.into(),
            message: message.into(),
        }
    }
}
