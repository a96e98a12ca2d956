//! Seeded input generation. Every generator is a pure function of its
//! arguments: the same seed always yields the same data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rmqbatch::{CartesianTree, LabeledTree, NodeQueryBatch, QueryBatch};

use crate::error::{BenchError, Result};

/// Identifier of the pseudo-random generator behind every `gen_*` function.
pub const GENERATOR_ID: &str = "chacha8";

/// Default seed when neither `--seed` nor `RMQBATCH_SEED` is given.
pub const DEFAULT_SEED: u64 = 42;

// Distinct streams so an array and its queries drawn from one seed are
// independent.
const ARRAY_STREAM: u64 = 1;
const QUERY_STREAM: u64 = 2;
const TREE_STREAM: u64 = 3;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `n` values drawn uniformly from `[0, 2^31)`.
pub fn gen_array(n: usize, seed: u64) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(BenchError::Config("array length must be positive".into()));
    }
    let mut rng = rng(seed, ARRAY_STREAM);
    Ok((0..n).map(|_| rng.gen_range(0..1i64 << 31)).collect())
}

/// `q` ranges drawn uniformly from all `n(n+1)/2` pairs `i <= j < n`.
///
/// Pairs `i <= j` over `0..n` correspond one-to-one with pairs `a < b` over
/// `0..=n` via `(i, j) = (a, b - 1)`, so two distinct draws from `0..=n` give
/// a uniform range.
pub fn gen_queries(n: usize, q: usize, seed: u64) -> Result<QueryBatch> {
    if n == 0 {
        return Err(BenchError::Config("array length must be positive".into()));
    }
    let mut rng = rng(seed, QUERY_STREAM);
    let pairs = (0..q)
        .map(|_| loop {
            let a = rng.gen_range(0..=n);
            let b = rng.gen_range(0..=n);
            if a != b {
                break (a.min(b), a.max(b) - 1);
            }
        })
        .collect();
    Ok(QueryBatch::new(pairs))
}

/// `q` node pairs drawn uniformly from `0..n` (drawn as ranges, so `u <= v`).
pub fn gen_node_queries(n: usize, q: usize, seed: u64) -> Result<NodeQueryBatch> {
    Ok(NodeQueryBatch::new(gen_queries(n, q, seed)?.pairs().to_vec()))
}

/// Cartesian tree of a random array, renumbered in preorder so the root is
/// node 0 and every parent precedes its children.
pub fn gen_tree(n: usize, seed: u64) -> Result<LabeledTree> {
    if n == 0 {
        return Err(BenchError::Config("tree size must be positive".into()));
    }
    let mut rng = rng(seed, TREE_STREAM);
    let values: Vec<i64> = (0..n).map(|_| rng.gen_range(0..1i64 << 31)).collect();
    let ct = CartesianTree::build(&values);
    drop(values);

    use rmqbatch::RootedTree;
    let mut order = vec![0u32; n];
    let mut parents = vec![None; n];
    let mut next = 0u32;
    let mut stack = vec![ct.root()];
    while let Some(v) = stack.pop() {
        order[v] = next;
        if let Some(p) = ct.parent(v) {
            parents[next as usize] = Some(order[p] as usize);
        }
        next += 1;
        if let Some(r) = ct.right(v) {
            stack.push(r);
        }
        if let Some(l) = ct.left(v) {
            stack.push(l);
        }
    }
    Ok(LabeledTree::from_parents(&parents)?)
}
