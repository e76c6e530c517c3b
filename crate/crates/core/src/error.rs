use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("zero polynomial has no factorization")]
    ZeroInput,
    #[error("degree {0} exceeds the factorization cap of {1}")]
    DegreeCap(usize, usize),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{0}' at position {1}")]
    UnknownVariable(char, usize),
    #[error("singular model: discriminant vanishes identically")]
    Singular,
    #[error("{0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate Gram matrix")]
    Degenerate,
    #[error("lattice is not definite")]
    Indefinite,
}

pub type Result<T> = std::result::Result<T, Error>;
