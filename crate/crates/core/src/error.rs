use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("constant term {0} is not invertible")]
    NotInvertible(String),
    #[error("weight {weight} is incompatible with the parity of character {character}")]
    ParityMismatch { character: String, weight: u32 },
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("invalid numerator: {0}")]
    InvalidNumerator(String),
    #[error("invalid product factor at n = {n}: {reason}")]
    InvalidFactor { n: usize, reason: String },
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("singular linear system")]
    SingularSystem,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
