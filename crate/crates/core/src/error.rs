use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("enumeration cap of {cap} elements exceeded")]
    CapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("element is not a member of the group")]
    NotMember,
    #[error("not a subgroup of the given group")]
    NotSubgroup,
    #[error("fixed-point formula gave a non-integral value {numerator}/{denominator}")]
    NonIntegralResult { numerator: u128, denominator: u128 },
    #[error("action of degree {0} is degenerate (degree < 2)")]
    DegenerateAction(usize),
    #[error("group is not transitive on {0}")]
    NotTransitive(&'static str),
    #[error("subgroup is not transitive on {0}")]
    NotTransitiveSubgroup(&'static str),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("coset indices differ: [G:U] = {left}, [G:V] = {right}")]
    IndexMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("group action does not preserve the geometry: {0}")]
    NotAnAutomorphism(String),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("invalid grid step: {0}")]
    InvalidStep(String),
    #[error("grid has no interior nodes")]
    EmptyGrid,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("eigensolver did not converge within {iterations} iterations")]
    ConvergenceFailure { iterations: usize },
    #[error("mismatched parameters: {0}")]
    MismatchedParameters(String),
    #[error("spectrum too short: {0}")]
    InsufficientSpectrum(String),
    #[error("search budget of {0} exhausted")]
    BudgetExhausted(u64),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
