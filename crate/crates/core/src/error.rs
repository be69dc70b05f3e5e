use thiserror::Error;

/// Errors raised by the quiver, algebra and series engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate arrow name `{0}`")]
    DuplicateArrow(String),
    #[error("cycle is not composable: {0}")]
    NotComposable(String),
    #[error("vertex `{0}` carries a loop")]
    LoopAtVertex(String),
    #[error("dimension vector has a negative entry at vertex `{0}`")]
    NegativeDimension(String),
    #[error("dimension vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero dimension vector")]
    ZeroVector,
    #[error("quiver is not symmetric (a_ij != a_ji)")]
    NonSymmetricQuiver,
    #[error("matrix is not symmetric")]
    NonSymmetricMatrix,
    #[error("non-generic central charge: {0}")]
    NonGeneric(String),
    #[error("central charge for vertex `{0}` is not in the upper half-plane")]
    ChargeNotUpper(String),
    #[error("series bases differ")]
    BasisMismatch,
    #[error("series live over different quivers")]
    QuiverMismatch,
    #[error("truncations differ: {0} vs {1}")]
    TruncationMismatch(u32, u32),
    #[error("constant term is not 1")]
    NonUnitConstant,
    #[error("coefficient at {gamma:?} is not a Laurent polynomial")]
    NotLaurent { gamma: Vec<i64> },
    #[error("exact division failed: {0}")]
    ExactDivision(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("HN peeling left a residual different from 1")]
    ResidualNotOne,
    #[error("vector {0:?} is not in the non-negative span of the basis")]
    NotInSpan(Vec<i64>),
    #[error("basis is not a lattice basis")]
    NotALatticeBasis,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no period <= {0} found")]
    NoPeriod(u32),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
