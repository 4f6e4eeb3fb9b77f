use thiserror::Error;

/// Errors produced by graph ingestion and the analysis pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("loop edge at vertex {vertex}: loops are not allowed")]
    Loop { vertex: usize },

    #[error("adjacency matrix is not symmetric at ({i}, {j})")]
    Asymmetry { i: usize, j: usize },

    #[error("vertex index {index} out of range for n = {n}")]
    Range { index: usize, n: usize },

    #[error("graph is disconnected: vertex {unreachable} unreachable from {from}")]
    Disconnected { from: usize, unreachable: usize },

    #[error("path capacity exceeded: more than {cap} paths (found {found} before aborting)")]
    CapacityExceeded { cap: usize, found: usize },

    #[error("vertex {vertex} is isolated; the normalized Laplacian needs d_i > 0")]
    IsolatedVertex { vertex: usize },

    #[error("eigensolver did not converge in {sweeps} sweeps (off-diagonal mass {off_diag:e})")]
    Convergence { sweeps: usize, off_diag: f64 },

    #[error("graph is not regular: degrees {a} and {b} differ")]
    NotRegular { a: usize, b: usize },

    #[error("vector is constant: the quotient denominator vanishes")]
    ConstantVector,

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: usize },

    #[error("group order exceeds limit {limit}")]
    LimitExceeded { limit: usize },

    #[error("path lengths differ: {a} vs {b}")]
    LengthMismatch { a: usize, b: usize },

    #[error("graph is not vertex-transitive")]
    NotVertexTransitive,

    #[error("no relation supplied for path length {length}")]
    MissingRelationLength { length: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
