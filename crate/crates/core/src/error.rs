use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("query #{ordinal} ({i}, {j}) is not a valid range over an array of length {n}")]
    InvalidQuery {
        ordinal: usize,
        i: usize,
        j: usize,
        n: usize,
    },

    #[error("query #{ordinal} references node {node}, but the tree has {n} nodes")]
    UnknownNode { ordinal: usize, node: usize, n: usize },

    #[error("marking {marks} positions above {base} overflows the machine word")]
    MarkOverflow { base: i128, marks: usize },

    #[error("contraction needs at least one query")]
    EmptyBatch,

    #[error("input must not be empty")]
    EmptyInput,

    #[error("position {index} is out of range (length {len})")]
    OutOfRange { index: usize, len: usize },

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("input of length {0} exceeds the 32-bit index range")]
    TooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
