use thiserror::Error;

/// Errors shared by all certilab modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("search exceeded the node budget of {budget}")]
    BudgetExceeded { budget: u64 },
    #[error("sweep over {size} items exceeds the guard of {limit}")]
    SweepTooLarge { size: u64, limit: u64 },
    #[error("verifier table with {entries} entries exceeds the guard of {limit}")]
    TableTooLarge { entries: usize, limit: usize },
    #[error("certificate width {found} does not match expected width {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("labeling covers {found} vertices, expected {expected}")]
    LabelCountMismatch { expected: usize, found: usize },
    #[error("identifier {id} assigned more than once")]
    DuplicateId { id: u64 },
    #[error("identifier {id} of vertex {vertex} outside [1, {bound}]")]
    IdOutOfRange { vertex: usize, id: u64, bound: u64 },
    #[error("view of degree {degree} outside verifier domain (degrees {min}..={max})")]
    ViewOutsideDomain { degree: usize, min: usize, max: usize },
    #[error("graph is not regular: vertex {u} has degree {du}, vertex {v} has degree {dv}")]
    NotRegular { u: usize, du: usize, v: usize, dv: usize },
    #[error("expected {expected} labelings, got {found}")]
    WrongLabelingCount { expected: usize, found: usize },
    #[error("instances must either all carry identifiers or all be anonymous")]
    MixedIdPresence,
}

pub type Result<T> = std::result::Result<T, Error>;
