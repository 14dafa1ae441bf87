use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unrecognised field {0:?} (expected \"Q\" or \"GF(p)\")")]
    BadFieldSpec(String),
    #[error("malformed scalar {0:?}")]
    BadScalar(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("invalid arity {0} (must be at least 2)")]
    InvalidArity(usize),
    #[error("bracket key {0:?} is not a strictly increasing tuple of indices below {1}")]
    InvalidKey(Vec<usize>, usize),
    #[error("wrong number of bracket arguments: expected {expected}, found {found}")]
    WrongArgCount { expected: usize, found: usize },
    #[error("subspace is not contained in the center")]
    NotCentral,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid parameters for {0}")]
    InvalidParameters(String),
    #[error("L7(3) has a doubly assigned bracket in its printed table; choose reading A or B")]
    DisputedEntry,
    #[error("unrecognised label {0:?}")]
    BadLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("bracket entry {entry}: {reason}")]
    BadEntry { entry: usize, reason: String },
    #[error("bracket entry {entry}: duplicate args {args:?}")]
    DuplicateArgs { entry: usize, args: Vec<usize> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("algebra is neither abelian nor nilpotent of class two")]
    NotClassTwo,
    #[error("arity {0} is not supported; classification needs n >= 3")]
    UnsupportedArity(usize),
    #[error("dimension {d} is not supported for arity {n}: {reason}")]
    UnsupportedDimension { n: usize, d: usize, reason: String },
    #[error("normalization failed: {reason}")]
    NormalizationFailure { reason: String, trace: Vec<crate::classify::TraceStep> },
}
