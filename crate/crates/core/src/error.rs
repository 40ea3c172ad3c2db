//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported: every construction here assumes odd characteristic")]
    EvenCharacteristic,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input where a nonzero element is required")]
    ZeroElement,
    #[error("element is not a square")]
    NotASquare,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("element has negative valuation at the place")]
    NegativeValuation,
    #[error("operands live at different places")]
    PlaceMismatch,
    #[error("element is not a unit (valuation {0})")]
    NotAUnit(i64),
    #[error("defining element is a square, so the quadratic extension would split")]
    SquareInput,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("quadratic form is degenerate (rank < 3 over the function field)")]
    DegenerateForm,
    #[error("residue search space too large (q = {0} exceeds the enumeration bound {1})")]
    SearchSpaceTooLarge(u64, u64),
    #[error("series precision exhausted")]
    PrecisionExhausted,
    #[error("hypothesis violation: a and b share the factor {0}")]
    HypothesisViolation(String),
    #[error("degenerate fiber is a double line (the coefficient vanishes on the component)")]
    DoubleLine,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    InvalidInput(String),
}
