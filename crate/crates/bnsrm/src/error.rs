//! Error type shared by the whole crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("cycle detected through nodes {0:?}")]
    Cycle(Vec<usize>),

    #[error("invalid assignment: value {value} out of range for variable {node} (alphabet size {size})")]
    InvalidAssignment {
        node: usize,
        value: usize,
        size: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("csv format error at line {line}: {message}")]
    CsvFormat { line: usize, message: String },

    #[error("schema violation at row {row}, column {column:?}: token {token:?} not in declared alphabet")]
    SchemaViolation {
        row: usize,
        column: String,
        token: String,
    },

    #[error("empty dataset: {0}")]
    EmptyDataset(String),

    #[error("degenerate alphabet in column {column:?}: fewer than two distinct values and no schema given")]
    DegenerateAlphabet { column: String },

    #[error("invalid network: {0:?}")]
    InvalidNetwork(Vec<String>),

    #[error("infeasible probability floor: epsilon {epsilon} times alphabet size {m} exceeds 1")]
    InfeasibleFloor { epsilon: f64, m: usize },

    #[error("support violation: row {row} has zero probability under the model")]
    SupportViolation { row: usize },

    #[error("state space too large for exact enumeration: {states} states (limit {limit})")]
    StateSpaceTooLarge { states: u128, limit: u128 },

    #[error("integer overflow while evaluating a VC bound")]
    BoundOverflow,

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("exhaustive enumeration refused: n={n}, delta={delta} would visit about {estimate} parent assignments")]
    EnumerationGuard { n: usize, delta: usize, estimate: u128 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
