use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("z = {0} is a pole of the rational function")]
    Pole(String),

    #[error("degenerate convergents at index {index}: p_(n-1)q_(n-2) - p_(n-2)q_(n-1) = 0")]
    DegenerateConvergents { index: usize },

    #[error("equivalence scale c_{index} is zero")]
    ZeroScale { index: usize },

    #[error("continued fraction tail vanishes at depth {depth}")]
    DivisionByZero { depth: usize },

    #[error("hypergeometric sum does not terminate or hits a zero lower parameter")]
    NonTerminating,

    #[error("error of {id} at n = {n} is below the precision floor of {prec} bits")]
    PrecisionFloor { id: String, n: u32, prec: u32 },

    #[error("reference zeta(3) cross-validation failed at {digits} digits")]
    CrossValidation { digits: u32 },

    #[error("degenerate least-squares design: {0}")]
    DegenerateDesign(String),

    #[error("integrality check failed: {0}")]
    Integrality(String),
}
