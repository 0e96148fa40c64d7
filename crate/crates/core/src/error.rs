use thiserror::Error;

/// Errors raised by graph-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("points must be distinct, got `{0}` twice")]
    SamePoint(String),
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("point identifiers collide: {}", .0.join(", "))]
    IdentifierCollision(Vec<String>),
    #[error("edge ({0}, {1}) already present")]
    EdgeExists(String, String),
    #[error("edge ({0}, {1}) not present")]
    EdgeMissing(String, String),
    #[error("clique enumeration exceeded the budget of {limit} cliques")]
    CliqueBudget { limit: usize },
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// Errors raised by contractibility search and contractible transformations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has {points} points, above the search limit of {limit}")]
    ResourceLimit { points: usize, limit: usize },
    #[error("rim set {0:?} does not induce a contractible graph")]
    RimNotContractible(Vec<String>),
    #[error("joint rim of ({0}, {1}) is not contractible")]
    JointRimNotContractible(String, String),
    #[error("point `{0}` is not simple")]
    NotSimplePoint(String),
    #[error("edge ({0}, {1}) is not simple")]
    NotSimpleEdge(String, String),
}

/// Errors raised by manifold recognition and compression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManifoldError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("input is not a digital {0}-manifold")]
    NotManifold(u8),
    #[error("input is not a digital 1- or 2-manifold")]
    NotSurfaceOrCurve,
    #[error("({0}, {1}) is not a simple pair")]
    NotSimplePair(String, String),
    #[error("torus dimensions must be at least 4, got {rows}x{cols}")]
    TorusTooSmall { rows: usize, cols: usize },
}
