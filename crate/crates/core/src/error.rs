use thiserror::Error;

/// Errors raised by constructors and operations with preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid tree sequence: {0}")]
    InvalidTreeSequence(String),
    #[error("unknown edge {edge} in a tree with {edges} edges")]
    UnknownEdge { edge: usize, edges: usize },
    #[error("edges {0}' and {1}' do not share exactly one vertex")]
    NotAdjacent(usize, usize),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("arity mismatch: operator has arity {operator}, function has arity {function}")]
    ArityMismatch { operator: usize, function: usize },
    #[error("malformed operator spec at offset {offset}: {message}")]
    OperatorSyntax { offset: usize, message: String },
    #[error("not a classical pattern: {0}")]
    NotClassical(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("independent computations disagree: {0}")]
    Inconsistent(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
