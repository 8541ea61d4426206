use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("invalid modulus {0}: must be a prime below 65536")]
    InvalidModulus(u64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is divisible by x")]
    NotCoprimeToX,
    #[error("constant polynomial has no order")]
    ConstantPolynomial,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("incomplete value table: expected {expected} entries, found {found}")]
    IncompleteTable { expected: usize, found: usize },
    #[error("operation requires characteristic 2, field has {0}")]
    WrongCharacteristic(u32),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("enumeration of {needed} entries exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: usize },
    #[error("local function {0} is not affine")]
    NotAffine(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("system is not a Boolean monomial system")]
    NotMonomial,
    #[error("not a permutation of the vertex set")]
    NotPermutation,
    #[error("dependency graph is not symmetric: {0} -> {1} has no reverse edge")]
    GraphNotSymmetric(usize, usize),
    #[error("stationary iteration did not converge after {0} iterations")]
    ConvergenceFailure(usize),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Semantic(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
