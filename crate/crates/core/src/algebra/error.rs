use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("no elimination variable")]
    NoEliminationVariable,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable sets differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("division is not exact")]
    InexactDivision,
    #[error("increase truncation_order")]
    TruncationTooShort,
    #[error("polynomial is not irreducible over Q: {0}")]
    Reducible(String),
    #[error("extension degree {degree} exceeds cap {cap}")]
    ExtensionCap { degree: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
