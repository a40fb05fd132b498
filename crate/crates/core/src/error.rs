use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("polynomials live over different alphabets ({left} vs {right})")]
    AlphabetMismatch { left: String, right: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator `{0}` in alphabet")]
    DuplicateGenerator(String),

    #[error("invalid rewrite rule: {0}")]
    InvalidRule(String),

    #[error("rewrite step budget of {budget} exceeded; the preset is malformed")]
    StepBudgetExceeded { budget: u64 },

    #[error("kernel semantics need D as the maximal generator: {0}")]
    KernelPrecondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("generator `{0}` has no operator assigned")]
    UnassignedGenerator(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
