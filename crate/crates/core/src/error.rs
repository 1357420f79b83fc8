use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("rewrite step limit of {0} exceeded")]
    StepLimit(u64),
    #[error("missing table entry: {0}")]
    MissingEntry(String),
    #[error("inadmissible rule {rule}: {reason}")]
    Inadmissible { rule: String, reason: String },
    #[error("not solvable: {0}")]
    NotSolvable(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("validation failed for {what}: {detail}")]
    Validation { what: String, detail: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
