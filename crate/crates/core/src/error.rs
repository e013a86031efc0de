use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("modulus is reducible over the base field")]
    ReducibleModulus,
    #[error("modulus has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("element does not generate the multiplicative group")]
    NotPrimitive,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("repeated root in defining set")]
    DuplicateRoots,
    #[error("repeated evaluation point")]
    DuplicatePoints,
    #[error("column multiplier is zero")]
    ZeroMultiplier,
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("H1 has more rows ({h1}) than H0 ({h0})")]
    RowCountExceeded { h0: usize, h1: usize },
    #[error("search budget of {budget} exhausted")]
    SearchBudgetExceeded { budget: u64 },
    #[error("search budget exhausted; distance is at least {lower}")]
    BudgetExceeded { lower: usize, upper: Option<usize> },
    #[error("property violated: {0}")]
    PropertyViolation(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("row {row} does not have maximal positive degree")]
    NotMaximalDegreeRow { row: usize },
    #[error("k must have the same parity as {expected}")]
    ParityConditionViolated { expected: &'static str },
    #[error("construction requires an even field size, got q = {0}")]
    OddFieldSize(u32),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
