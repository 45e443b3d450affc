use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty interval: lower endpoint {lo} exceeds upper endpoint {hi}")]
    EmptyInterval { lo: String, hi: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("arrangement must contain at least one box")]
    EmptyArrangement,
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("graph has {0} vertices; at most {max} are supported", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("complete graph: {0}")]
    CompleteGraph(&'static str),
    #[error("graph has a universal vertex ({0}); strip universal vertices first")]
    UniversalVertex(usize),
    #[error("box index {index} out of range 1..={n}")]
    BoxIndexOutOfRange { index: usize, n: usize },
    #[error("split requires at least two boxes")]
    SplitTooSmall,
    #[error("missing eta table entry: {0}")]
    MissingEta(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("witness for r = {r} failed validation: {reason}")]
    InvalidWitness { r: usize, reason: String },
    #[error("boxicity undecided within budget for {count} graph(s): {graphs}")]
    BoxicityUndecided { count: usize, graphs: String },
    #[error("unknown fixture `{name}`; available: {available}")]
    UnknownFixture { name: String, available: String },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
