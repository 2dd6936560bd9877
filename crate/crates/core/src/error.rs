use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,

    #[error("determinant must be positive")]
    NonPositiveDeterminant,

    #[error("vector must be nonzero")]
    ZeroVector,

    #[error("line {line}, column {column}: expected {expected}")]
    Parse {
        line: usize,
        column: usize,
        expected: String,
    },

    #[error("{0}")]
    Semantic(String),

    #[error("pullback data gives a singular matrix")]
    SingularInput,

    #[error("pullback data does not invert to an integer matrix")]
    NonIntegralResult,

    #[error("terminal classes are not pairwise distinct")]
    DuplicateTerminalClass,

    #[error("push {push} has no translate inside the normalized fundamental domain")]
    NormalizationObstructed { push: String },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
