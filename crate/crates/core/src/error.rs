use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigError {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("matrix is not Hermitian at entry ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    #[error("value is not real")]
    NotReal,

    #[error("boundary character: {0}")]
    BoundaryCharacter(String),

    #[error("nullity unavailable: generators are not a basis")]
    NullityUnavailable,

    #[error("splice guard violated: {0}")]
    GuardViolated(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("missing base evaluator: {0}")]
    MissingBaseEvaluator(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid Seifert family: {0}")]
    InvalidFamily(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl SigError {
    /// Short machine-readable tag, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            SigError::LengthMismatch { .. } => "LengthMismatch",
            SigError::IndexOutOfRange { .. } => "IndexOutOfRange",
            SigError::NotHermitian { .. } => "NotHermitian",
            SigError::NotReal => "NotReal",
            SigError::BoundaryCharacter(_) => "BoundaryCharacter",
            SigError::NullityUnavailable => "NullityUnavailable",
            SigError::GuardViolated(_) => "GuardViolated",
            SigError::InvalidParams(_) => "InvalidParams",
            SigError::MissingBaseEvaluator(_) => "MissingBaseEvaluator",
            SigError::Parse(_) => "Parse",
            SigError::InvalidFamily(_) => "InvalidFamily",
            SigError::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, SigError>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(SigError::LengthMismatch { expected, found })
    }
}
