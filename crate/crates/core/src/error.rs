use thiserror::Error;

/// Errors produced by the graph, solver, product and certificate layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("edge list parse error on line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("self-loop on vertex {vertex} (line {line})")]
    SelfLoop { line: usize, vertex: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices (line {line})")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },

    #[error("{what} has {n} vertices; the cap is {cap}")]
    SizeCap { what: &'static str, n: usize, cap: usize },

    #[error("solver budget exceeded after {nodes} search nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("computing {which} failed: {source}")]
    Gamma {
        which: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("theorem precondition violated: {0}")]
    Precondition(String),

    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),

    #[error("corpus line {line}: {source}")]
    Corpus {
        line: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
