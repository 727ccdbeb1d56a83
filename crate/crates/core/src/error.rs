use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not a prime below 2^31")]
    NonPrime(u64),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("entry ({row}, {col}) is not homogeneous of the degree required by its column: {detail}")]
    NonHomogeneous {
        row: usize,
        col: usize,
        detail: String,
    },

    #[error("column {0} is zero and no degree was supplied for it")]
    EmptyColumn(usize),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("the module is zero")]
    ZeroModule,

    #[error("expected a linear form, got a polynomial of degree {0:?}")]
    NotLinear(Option<u32>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no linear form with finite-length colon found after {0} attempts")]
    NoFiniteColon(usize),

    #[error("line {line}, column {column}: {inner}")]
    At {
        line: usize,
        column: usize,
        inner: Box<Error>,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
