use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected two node labels, found {found} token(s)")]
    Parse { line: usize, found: usize },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("degree sequence could not be realized after {attempts} attempts")]
    Unrealizable { attempts: usize },

    #[error("budget {k} out of range for a graph with {n} nodes")]
    BudgetOutOfRange { k: usize, n: usize },

    #[error("node id {id} out of range for a graph with {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("mismatched node counts: {left} vs {right}")]
    NodeCountMismatch { left: usize, right: usize },

    #[error("critical point estimation: {0}")]
    Critical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
