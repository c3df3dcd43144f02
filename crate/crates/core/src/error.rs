use thiserror::Error;

/// Errors raised by the library. Domain failures that a caller may want to
/// inspect (validation, axiom checks) are reported in result structs instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("zero function has no principal divisor")]
    ZeroFunction,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone {0} is not smooth")]
    NotSmooth(usize),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("coordinate mismatch: {0}")]
    CoordinateMismatch(String),
    #[error("residue target is not a unit at the prime (ord = {0})")]
    HNotUnit(i64),
    #[error("element does not match decoration kind: {0}")]
    KindMismatch(String),
    #[error("vector is not a lift of the given covector")]
    NotALift,
    #[error("no maximal cone contains the prime divisor")]
    NoContainingCone,
    #[error("invalid u: {0}")]
    InvalidU(String),
    #[error("module order mismatch")]
    OrderMismatch,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("saturation by the zero polynomial")]
    ZeroDivisorInput,
    #[error("saturation did not stabilize within {0} iterations")]
    IterationCap(usize),
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("unsupported kind: {0}")]
    UnsupportedKind(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("inhomogeneous input in homogeneous coordinates: {0}")]
    InhomogeneousProjectiveInput(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
