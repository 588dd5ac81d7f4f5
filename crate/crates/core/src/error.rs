use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// What went wrong on a particular line of an edge-list document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line {0:?}")]
    Malformed(String),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("header declares {declared} edges but {found} edge lines follow")]
    EdgeCountMismatch { declared: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph is disconnected: no path between {u} and {v}")]
    Disconnected { u: usize, v: usize },
    #[error("operation needs a graph with at least {needed} vertices, got {order}")]
    OrderTooSmall { order: usize, needed: usize },
    #[error("{what} = {size} exceeds the enumeration cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("power iteration did not reach tolerance {tol:e} within {iterations} iterations (residual {residual:e})")]
    IterationCap {
        iterations: usize,
        tol: f64,
        residual: f64,
    },
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("quotient root {closed_form} disagrees with dense solve {dense} beyond {tol:e}")]
    RootMismatch {
        closed_form: f64,
        dense: f64,
        tol: f64,
    },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
