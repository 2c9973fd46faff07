use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {k} is not a unit modulo {n}")]
    NotCoprime { k: u64, n: u64 },
    #[error("conductor {have} does not divide {want}")]
    ConductorMismatch { have: u32, want: u32 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("{0} is not an eigenvalue")]
    NotEigenvalue(String),
    #[error("lambda is not normal")]
    NotNormal,
    #[error("minimal polynomial does not annihilate lambda")]
    NotAnnihilated,
    #[error("alpha is not an eigenvalue of lambda")]
    AlphaNotEigenvalue,
    #[error("characteristic polynomial is not a power of the minimal polynomial")]
    NotPseudoCompanion,
    #[error("ring violation: {0}")]
    RingViolation(String),
    #[error("entry ({row}, {col}) is outside {ring}")]
    EntryOutsideRing { row: usize, col: usize, ring: String },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("gate `{0}` is not unitary")]
    NotUnitary(String),
    #[error("template for `{0}` does not evaluate to the embedded gate")]
    TemplateMismatch(String),
    #[error("gate `{0}` is not covered by the embedding")]
    UncoveredGate(String),
    #[error("ring chain mismatch: {0}")]
    RingChainMismatch(String),
    #[error("element is not unimodular")]
    NotUnimodular,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("dimension {0} exceeds the simulator limit")]
    TooLarge(usize),
    #[error("epsilon must lie in (0, 1]")]
    InvalidEpsilon,
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("catalog entry `{id}`: {reason}")]
    Catalog { id: String, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
