use alloc::string::String;

/// Errors raised by constructors and analyses.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("edge `{0}` has equal endpoints")]
    LoopEdge(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{edge}` references missing vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("bad coordinate: {0}")]
    BadCoordinate(String),
    #[error("malformed cell complex: {0}")]
    InvalidComplex(String),
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a closed surface at cell `{cell}`: {reason}")]
    NotASurface { cell: String, reason: String },
    #[error("index set must be nonempty")]
    EmptyIndexSet,
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("cell `{0}` is not in the projection")]
    CellNotInProjection(String),
    #[error("complex is not a ramified manifold of full dimension")]
    NotRamified,
    #[error("product structure check failed: {0}")]
    FactorizationMismatch(String),
    #[error("complex is not connected")]
    NotConnected,
    #[error("complex is not 2-dimensional (dimension {0})")]
    Not2Dimensional(usize),
    #[error("edge path is not simple: {0}")]
    NotSimplePath(String),
    #[error("arc is not contained in the product: {0}")]
    ArcNotInProduct(String),
    #[error("collapse witness does not replay: {0}")]
    BadWitness(String),
    #[error("dimension {dim} cannot be split with k = {k}")]
    BadDimensionSplit { dim: usize, k: usize },
    #[error("unknown gallery item `{0}`")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

pub type Result<T> = core::result::Result<T, Error>;
