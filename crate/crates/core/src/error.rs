use thiserror::Error;

/// Errors raised by graph construction, spec resolution and the engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected: vertex {0} is unreachable from vertex 1")]
    Disconnected(usize),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("{what}: n = {n} exceeds the exhaustive-search cap of {cap}")]
    SizeLimitExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("preset `{0}` is missing its parameter")]
    MissingParameter(String),
    #[error("matrix {matrix}: {detail}")]
    MatrixShapeMismatch { matrix: String, detail: String },
    #[error("matrix {matrix} is not symmetric at ({i},{j})")]
    AsymmetricMatrix { matrix: String, i: usize, j: usize },
    #[error("matrix {matrix} has nonzero diagonal entry at ({i},{i})")]
    NonzeroDiagonal { matrix: String, i: usize },
    #[error("matrix {matrix} has negative entry {value} at ({i},{j}); only -1 (unbounded) is allowed")]
    NegativeEntryOtherThanSentinel {
        matrix: String,
        i: usize,
        j: usize,
        value: i64,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
