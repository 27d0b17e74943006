use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid manifold: {field} = {value} must be non-negative")]
    NegativeCount { field: &'static str, value: i64 },

    #[error("invalid manifold: the empty connected sum is not allowed")]
    EmptySum,

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("zero has no factorization")]
    FactorZero,

    #[error("indefinite form needs an explicit box bound")]
    MissingBoxBound,

    #[error("invalid search budget: {0}")]
    InvalidBudget(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(i64, i64),

    #[error("matrix does not certify degree {degree} from {domain} to {target}")]
    InvalidCertificate { domain: String, target: String, degree: i64 },

    #[error("invalid characteristic pair: {0}")]
    InvalidPair(String),

    #[error("facets {0} and {1} do not span a unimodular corner (det = {2})")]
    SingularCorner(usize, usize, i64),

    #[error("{0}")]
    Invalid(String),
}
