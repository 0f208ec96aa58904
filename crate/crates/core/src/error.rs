use thiserror::Error;

/// Errors raised by the algebraic operations and the document reader.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("rational function has a pole at t = {at}")]
    Pole { at: String },

    #[error("{value} is not divisible by t - 1 (value at t = 1 is {at_one})")]
    NotDivisibleByTMinusOne { value: String, at_one: String },

    #[error("duplicate interpolation node {0}")]
    DuplicateNode(String),

    #[error("operands live in different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("coefficient `{0}` depends on t where a constant is required")]
    NotConstant(String),

    #[error("invalid deformation point {0}: must be registered and differ from 0 and 1")]
    InvalidLambda(String),

    #[error("semiclassical limit is not commutative: {0}")]
    NonCommutativeLimit(String),

    #[error("DE-data rejected: {0}")]
    DedataRejected(String),

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("rewriting did not terminate within {0} steps")]
    ReductionLimit(usize),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("missing [{0}] section")]
    MissingSection(String),
}

pub type Result<T> = std::result::Result<T, Error>;
