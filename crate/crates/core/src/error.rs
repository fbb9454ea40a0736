use thiserror::Error;

/// Errors raised while decoding a graph6 record.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("illegal graph6 character {ch:?} at byte {pos}")]
    IllegalChar { ch: char, pos: usize },
    #[error("graph6 record too short: expected {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("graph6 record has {extra} trailing byte(s)")]
    TrailingData { extra: usize },
    #[error("graph6 vertex count {0} out of range (1..=126)")]
    OrderOutOfRange(usize),
    #[error("graph6 padding bits are not zero")]
    NonZeroPadding,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error("vertex count {0} out of range (1..=126)")]
    OrderOutOfRange(usize),
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("brute force refused: order {n} exceeds limit {limit}")]
    SizeGuard { n: usize, limit: usize },
    #[error("total domination is undefined: vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("vertex {0} has no twin")]
    NoTwin(usize),
    #[error("twin reduction requires a triangle-free graph")]
    NotTriangleFree,
    #[error("edge ({0}, {1}) is not a cut edge")]
    NotCutEdge(usize, usize),
    #[error("set is not a hop dominating set")]
    NotHopDominating,
    #[error("set of size {size} is not minimum (optimum is {optimum})")]
    NotMinimum { size: usize, optimum: usize },
    #[error("precondition failed: graph is not connected")]
    NotConnected,
    #[error("precondition failed: graph contains a triangle")]
    HasTriangle,
    #[error("precondition failed: minimum degree {0} < 2")]
    MinDegreeTooSmall(usize),
    #[error("precondition failed: order {0} < 4")]
    TooSmall(usize),
    #[error("precondition failed: graph is the exceptional graph {0}")]
    Exceptional(String),
    #[error("could not certify a set of size <= {bound}; best found {found}")]
    SoundnessAlarm { bound: usize, found: usize },
    #[error("reconstruction of {0} fails its defining property")]
    Reconstruction(String),
    #[error("unknown family or check: {0}")]
    Unknown(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
