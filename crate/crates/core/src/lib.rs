//! Answering a small batch of range minimum queries (RMQs) or lowest common
//! ancestor (LCA) queries in `n + O(q)` time and `O(q)` extra space.
//!
//! The central step is [`contraction`]: query endpoints are marked in place
//! and every stretch of the array no query endpoint touches is collapsed to
//! its minimum, leaving an `O(q)`-sized instance. Any RMQ algorithm can then
//! run on the small instance. [`lca_batch`] does the same for trees by
//! contracting the Euler tour during a single depth-first walk.
//!
//! All algorithms break ties towards the leftmost minimum, so every variant
//! returns exactly the same answers.
//!
//! ```
//! use rmqbatch::{st_rmq_con, QueryBatch};
//!
//! let mut a = vec![17, 22, 38, 4, 5, 8, 2, 8, 9, 21, 0, 12, 8, 7, 13, 3, 6, 14, 1, 36, 0, 4];
//! let q = QueryBatch::checked(vec![(4, 18), (0, 6), (6, 10)], a.len()).unwrap();
//! assert_eq!(st_rmq_con(&mut a, &q).unwrap(), vec![10, 6, 10]);
//! ```

pub mod batch;
pub mod brute_force;
pub mod cartesian_offline;
pub mod contraction;
pub mod error;
pub mod lca_batch;
pub mod lce_demo;
pub mod online_rmq;
pub mod sparse_table;
pub mod tree;

use std::fmt;
use std::str::FromStr;

pub use batch::{AnswerSet, NodeQueryBatch, QueryBatch};
pub use brute_force::{bf_rmq, bf_rmq_con};
pub use cartesian_offline::{off_rmq, off_rmq_con, offline_lca, CartesianTree};
pub use contraction::{contract, find_max, ContractedArray};
pub use error::{Error, Result};
pub use lca_batch::{off_lca, on_lca_con, st_lca_con};
pub use lce_demo::SuffixLcp;
pub use online_rmq::{on_rmq, on_rmq_con, BlockRmq};
pub use sparse_table::{st_rmq, st_rmq_con, SparseTable};
pub use tree::{LabeledTree, RootedTree};

/// The eight RMQ batch algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RmqAlgorithm {
    Bf,
    BfCon,
    St,
    StCon,
    On,
    OnCon,
    Off,
    OffCon,
}

impl RmqAlgorithm {
    pub const ALL: [RmqAlgorithm; 8] = [
        RmqAlgorithm::St,
        RmqAlgorithm::StCon,
        RmqAlgorithm::On,
        RmqAlgorithm::OnCon,
        RmqAlgorithm::Off,
        RmqAlgorithm::OffCon,
        RmqAlgorithm::Bf,
        RmqAlgorithm::BfCon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RmqAlgorithm::Bf => "bf",
            RmqAlgorithm::BfCon => "bf-con",
            RmqAlgorithm::St => "st",
            RmqAlgorithm::StCon => "st-con",
            RmqAlgorithm::On => "on",
            RmqAlgorithm::OnCon => "on-con",
            RmqAlgorithm::Off => "off",
            RmqAlgorithm::OffCon => "off-con",
        }
    }

    pub fn is_contracted(self) -> bool {
        matches!(
            self,
            RmqAlgorithm::BfCon | RmqAlgorithm::StCon | RmqAlgorithm::OnCon | RmqAlgorithm::OffCon
        )
    }

    /// Runs the algorithm. Contracted variants mark `a` while they work and
    /// restore it before returning.
    pub fn run(self, a: &mut [i64], q: &QueryBatch) -> Result<AnswerSet> {
        match self {
            RmqAlgorithm::Bf => bf_rmq(a, q),
            RmqAlgorithm::BfCon => bf_rmq_con(a, q),
            RmqAlgorithm::St => st_rmq(a, q),
            RmqAlgorithm::StCon => st_rmq_con(a, q),
            RmqAlgorithm::On => on_rmq(a, q),
            RmqAlgorithm::OnCon => on_rmq_con(a, q),
            RmqAlgorithm::Off => off_rmq(a, q),
            RmqAlgorithm::OffCon => off_rmq_con(a, q),
        }
    }
}

/// The three LCA batch algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LcaAlgorithm {
    Off,
    StCon,
    OnCon,
}

impl LcaAlgorithm {
    pub const ALL: [LcaAlgorithm; 3] = [LcaAlgorithm::Off, LcaAlgorithm::StCon, LcaAlgorithm::OnCon];

    pub fn name(self) -> &'static str {
        match self {
            LcaAlgorithm::Off => "off",
            LcaAlgorithm::StCon => "st-con",
            LcaAlgorithm::OnCon => "on-con",
        }
    }

    pub fn run(self, tree: &mut LabeledTree, q: &NodeQueryBatch) -> Result<AnswerSet> {
        match self {
            LcaAlgorithm::Off => off_lca(tree, q),
            LcaAlgorithm::StCon => st_lca_con(tree, q),
            LcaAlgorithm::OnCon => on_lca_con(tree, q),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownAlgorithm(pub String);

impl fmt::Display for UnknownAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown algorithm `{}`", self.0)
    }
}

impl std::error::Error for UnknownAlgorithm {}

impl FromStr for RmqAlgorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        RmqAlgorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

impl FromStr for LcaAlgorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        LcaAlgorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

impl fmt::Display for RmqAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for LcaAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
