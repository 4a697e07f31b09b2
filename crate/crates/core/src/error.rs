use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid reference value: {0}")]
    InvalidReference(String),

    #[error("malformed float literal {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("non-finite operand: {0}")]
    InvalidOperand(String),

    #[error("{path}:{line}: {reason}")]
    Corpus {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("case {case}: stored quotient {stored} does not match reference {reference}")]
    OracleMismatch {
        case: u32,
        stored: String,
        reference: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
