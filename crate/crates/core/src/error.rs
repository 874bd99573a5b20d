use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("vertex {0} is already in a singleton cell")]
    SingletonCell(usize),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("partition is not equitable")]
    NotEquitable,
    #[error("generator is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid parameters: {0}")]
    Domain(String),
}
