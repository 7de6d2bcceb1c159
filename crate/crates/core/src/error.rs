use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Variants fall into three families that the command line maps onto exit
/// codes: input errors (2), mathematical refusals (1) and resource guards (3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid extension degree {0}")]
    InvalidDegree(u32),
    #[error("field F_{p}^{k} exceeds the supported size")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("operands have different numbers of variables ({0} vs {1})")]
    NvarsMismatch(usize, usize),
    #[error("variable index {0} out of range")]
    BadVariable(usize),
    #[error("no primitive {n}-th root of unity exists in characteristic {p}")]
    NoPrimitiveRoot { n: u64, p: u64 },
    #[error("{n} does not divide the multiplicative group order {order}")]
    RootNotInField { n: u64, order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Refused(_) | Error::Precondition(_) => 1,
            Error::ResourceLimit(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
