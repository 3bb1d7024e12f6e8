use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared name `{0}`")]
    UndeclaredName(String),
    #[error("zero exponent on `{0}`")]
    ZeroExponent(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("unit polynomial where a non-unit is required")]
    UnitPolynomial,
    #[error("character has a zero coordinate")]
    ZeroCoordinate,
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{cap} cap exceeded: {detail}")]
    CapExceeded { cap: &'static str, detail: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
