use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("element is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("wrong degree: expected {expected}, found {found}")]
    WrongDegree { expected: i64, found: i64 },
    #[error("budget exceeded: {what} needs more than {budget} graphs")]
    Budget { what: String, budget: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid components: {0}")]
    InvalidComponents(String),
    #[error("chart mismatch")]
    ChartMismatch,
    #[error("argument outside the zeta sector")]
    NotZetaSector,
    #[error("solution space has dimension {dim}, expected 1 (check the shape skeletons first)")]
    SolutionDimension { dim: usize },
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
