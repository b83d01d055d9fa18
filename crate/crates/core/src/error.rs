use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size n = {0} is out of range (need 3 <= n <= {max})", max = crate::graph::MAX_N)]
    InvalidGroundSet(usize),
    #[error("element {element} is outside 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("vertex elements must be distinct, got ({0}, {1}, {2})")]
    DuplicateElement(usize, usize, usize),
    #[error("rank {rank} is out of range for n = {n}")]
    RankOutOfRange { rank: usize, n: usize },
    #[error("vertex sets live over different ground sets ({0} vs {1})")]
    GroundSetMismatch(usize, usize),
    #[error("vertex {0} must not belong to the set")]
    VertexInSet(String),
    #[error("vertex sets must be disjoint")]
    Overlapping,
    #[error("set is not independent")]
    NotIndependent,
    #[error("independent set is not maximal in its host set")]
    NotMaximal,
    #[error("set is not contained in its host set")]
    NotSubset,
    #[error("{what}: size {size} exceeds the exact-search cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("expected a type-2 group")]
    WrongGroupKind,
    #[error("element {0} is not in the group's support")]
    NotInSupport(usize),
    #[error("set is not a star set")]
    NotStarSet,
    #[error("vertex is not in B_3 (it has {0} neighbours in the independent set)")]
    NotInB3(usize),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("cardinality l = {l} exceeds the vertex count {max}")]
    CardinalityOutOfRange { l: String, max: u64 },
    #[error("rho = {rho} exceeds n = {n}")]
    RhoOutOfRange { rho: u64, n: u64 },
    #[error("codensity must lie in [0, 1]")]
    CodensityOutOfRange,
    #[error("{0} requires rho")]
    MissingRho(&'static str),
    #[error("{0} requires l > 0")]
    ZeroCardinality(&'static str),
    #[error("{0} requires alpha > 0")]
    ZeroAlpha(&'static str),
}
