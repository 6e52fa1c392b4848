use thiserror::Error;

/// Errors raised while building instances or running solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {edge}: endpoint out of range ({detail})")]
    IndexOutOfRange { edge: usize, detail: String },
    #[error("edge {edge}: duplicate of edge {first} ({a}, {b})")]
    DuplicateEdge {
        edge: usize,
        first: usize,
        a: usize,
        b: usize,
    },
    #[error("edge {edge}: projection table has {found} entries, expected {expected}")]
    TableLengthMismatch {
        edge: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge {edge}: symbol {symbol} at position {position} is outside the B alphabet of size {sigma_b}")]
    SymbolOutOfRange {
        edge: usize,
        position: usize,
        symbol: usize,
        sigma_b: usize,
    },
    #[error("alphabet sizes must be positive")]
    EmptyAlphabet,
    #[error("assignment shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("enumeration budget exceeded: {needed} > cap {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("symbol {sigma} is not in the surviving set of vertex {vertex}")]
    NotInSigmaStar { vertex: usize, sigma: usize },
    #[error("instance does not have uniform preimage sizes")]
    UniformAssumptionViolated,
    #[error("no satisfying assignment found for the sampled set")]
    NoSatisfyingFound,
    #[error("planarity check failed: |E| = {edges} > 3n - 6 = {bound}")]
    PlanarityCheckFailed { edges: usize, bound: usize },
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParams(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0}")]
    Io(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
