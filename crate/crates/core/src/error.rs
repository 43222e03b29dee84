use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^31")]
    NonPrimeModulus(u64),

    #[error("malformed document: {0}")]
    MalformedDocument(String),

    #[error("pair index out of range: {{{i},{j}}} with dimU = {n} (need 1 <= i < j <= dimU)")]
    IndexOutOfRange { i: i64, j: i64, n: usize },

    #[error("value for pair {{{i},{j}}} has length {got}, expected dimV = {expected}")]
    BadVectorLength {
        i: usize,
        j: usize,
        got: usize,
        expected: usize,
    },

    #[error("pair {{{i},{j}}} listed more than once")]
    DuplicatePair { i: usize, j: usize },

    #[error("image of the map spans a space of dimension {rank}, but dimV = {dim}")]
    ImageDoesNotSpan { rank: usize, dim: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("infeasible dimensions: {0}")]
    InfeasibleDimensions(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),

    #[error("prime {0} appears more than once")]
    DuplicatePrime(u32),

    #[error("enumeration of {work} edge subsets exceeds the work cap of {cap}")]
    EnumerationTooLarge { work: u128, cap: u128 },

    #[error("invalid generator order: {0}")]
    BadOrder(String),

    #[error("presentation parse error: {0}")]
    Presentation(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
