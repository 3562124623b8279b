use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} exceeds the supported maximum of 128")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is not connected and unicyclic")]
    NotUnicyclic,
    #[error("graph is not a tree")]
    NotATree,
    #[error("invalid barbell partition: {0}")]
    InvalidPartition(String),
    #[error("graph order {n} exceeds the cap of {cap} for this operation")]
    Unsupported { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("graph6 long form (n > 62) is not supported")]
    Graph6TooLarge,
    #[error("byte {byte:#04x} at position {pos} is outside the printable range 63..=126")]
    Graph6BadByte { pos: usize, byte: u8 },
    #[error("graph6 string for {n} vertices needs {expected} bytes, found {found}")]
    Graph6BadLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("graph6 padding bits are not zero")]
    Graph6Padding,
    #[error("unparsable token {token:?}")]
    BadToken { token: String },
    #[error("edge list ends with an unpaired vertex")]
    UnpairedVertex,
    #[error("matrix header must be \"rows cols\"")]
    MatrixHeader,
    #[error("matrix has {found} entries, expected {expected}")]
    MatrixEntryCount { expected: usize, found: usize },
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix pattern does not match the graph")]
    PatternMismatch,
    #[error("matrix C has a zero entry at ({0}, {1})")]
    ZeroEntry(usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefuteError {
    #[error("witness check failed: {0}")]
    InvalidWitness(String),
    #[error("construction hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("degenerate lift: every S_j is zero")]
    DegenerateLift,
    #[error("no valid construction after trying seeds {seeds:?}")]
    RetriesExhausted { seeds: Vec<u64> },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed matrix in document: {0}")]
    Matrix(#[from] ParseError),
    #[error("inconsistent document: {0}")]
    Inconsistent(String),
}
