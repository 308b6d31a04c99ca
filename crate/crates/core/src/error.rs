use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("singular metric: diagonal entry {index} is zero")]
    SingularMetric { index: usize },

    #[error("singular linear system")]
    Singular,

    #[error("unsupported dimension n = {n}: the bracket table needs n >= 2")]
    UnsupportedDimension { n: usize },

    #[error("degenerate model (alpha = {alpha}, beta = {beta}): {reason}")]
    DegenerateModel { alpha: String, beta: String, reason: String },

    #[error("contact structure violates {identity} at {witness:?}")]
    Structure { identity: String, witness: Vec<usize> },

    #[error("not a (kappa, mu)-space: R(X,Y)xi identity fails at basis pair {witness:?}")]
    NotKappaMu { witness: (usize, usize) },

    #[error("vectors are linearly dependent; they do not span a plane")]
    DegeneratePlane,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("diagonal distribution needs non-zero c and d")]
    DegenerateDiagonal,

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("distribution is not involutive: [v{}, v{}] leaves the span", witness.0, witness.1)]
    NotInvolutive { witness: (usize, usize) },

    #[error("no exact square root of {0}")]
    NoExactRoot(String),

    #[error("parse error: {0}")]
    Parse(String),
}
