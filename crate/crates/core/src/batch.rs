//! Query batches and answer sets shared by every algorithm.
//!
//! A batch is an ordered list of pairs. The position of a pair in the list is
//! its ordinal; answers are always reported in ordinal order, whatever order an
//! algorithm happens to resolve them in.

use crate::error::{Error, Result};

/// One answer per query, in the order the queries were given. For range
/// queries an answer is an array index; for tree queries it is a node label.
pub type AnswerSet = Vec<usize>;

/// Inclusive index ranges `(i, j)` over an array.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryBatch {
    pairs: Vec<(usize, usize)>,
}

impl QueryBatch {
    /// Wraps `pairs` without checking them; every algorithm validates the
    /// batch against its array before touching it.
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        QueryBatch { pairs }
    }

    /// Builds a batch and validates it against an array of length `n`.
    pub fn checked(pairs: Vec<(usize, usize)>, n: usize) -> Result<Self> {
        let batch = QueryBatch { pairs };
        batch.validate(n)?;
        Ok(batch)
    }

    /// Every pair must satisfy `i <= j < n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        for (ordinal, &(i, j)) in self.pairs.iter().enumerate() {
            if i > j || j >= n {
                return Err(Error::InvalidQuery { ordinal, i, j, n });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }
}

impl From<Vec<(usize, usize)>> for QueryBatch {
    fn from(pairs: Vec<(usize, usize)>) -> Self {
        QueryBatch::new(pairs)
    }
}

/// Node pairs `(u, v)` over a tree with nodes `0..n`. Order within a pair is
/// irrelevant.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeQueryBatch {
    pairs: Vec<(usize, usize)>,
}

impl NodeQueryBatch {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        NodeQueryBatch { pairs }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        for (ordinal, &(u, v)) in self.pairs.iter().enumerate() {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::UnknownNode { ordinal, node, n });
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

impl From<Vec<(usize, usize)>> for NodeQueryBatch {
    fn from(pairs: Vec<(usize, usize)>) -> Self {
        NodeQueryBatch::new(pairs)
    }
}
