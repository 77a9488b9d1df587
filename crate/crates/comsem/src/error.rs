use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed presentation or graph file. Lines are 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Enumeration ran past the word-length or class-count budget without
    /// certifying finiteness.
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A word is too long for the congruence table to decide and has no zero
    /// factor, so its class is unknown.
    #[error("word of length {len} lies outside the congruence table (certified length {working_len})")]
    OutOfTable { len: usize, working_len: usize },

    /// No generating set of size at most `cap` exists.
    #[error("no generating set of size at most {cap}")]
    CapExceeded { cap: usize },

    /// The graph is too large for an exact solver.
    #[error("graph on {order} vertices exceeds the exact {solver} limit of {limit}")]
    TooLarge {
        solver: &'static str,
        order: usize,
        limit: usize,
    },

    /// The graph has a star vertex, so no realization exists.
    #[error("vertex {0:?} is adjacent to every other vertex")]
    NotStarFree(String),

    /// A vertex sequence was expected to be a simple path in the commuting
    /// graph but is not.
    #[error("{0}")]
    NotAPath(String),

    /// A caller violated an operation's precondition.
    #[error("{0}")]
    Precondition(String),

    /// A Cayley table failed validation (associativity, zero behaviour, or
    /// generator reachability).
    #[error("invalid semigroup table: {0}")]
    InvalidTable(String),
}
