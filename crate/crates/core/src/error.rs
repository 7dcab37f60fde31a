use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),
    #[error("square root of {0} does not exist in the exact field")]
    NotASquare(String),
    #[error("radicand {0} lies on the branch cut of the principal square root")]
    BranchCut(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("denominator parameter {0} hits a pole")]
    PoleInDenominator(String),
    #[error("evaluation point {0} is a pole")]
    Pole(String),
    #[error("series did not converge within {0} terms")]
    NonConvergence(usize),
    #[error("operator output is not a Laurent polynomial")]
    NotLaurentPolynomial,
    #[error("shift {0} exceeds the supported range")]
    UnsupportedShift(i64),
    #[error("point {0} is a singular point of the operator")]
    SingularPoint(String),
    #[error("point {0} lies outside the domain of the method")]
    OutOfDomain(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precision too low: {0}")]
    PrecisionTooLow(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
