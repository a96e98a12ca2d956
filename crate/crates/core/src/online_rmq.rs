//! Constant-time RMQ after linear preprocessing, by block decomposition.
//!
//! The array is cut into blocks of [`BLOCK`] entries. Each block is summarised
//! by the shape of its Cartesian tree, encoded as the push/pop sequence of the
//! construction stack; blocks with the same shape share one table of in-block
//! answers. A sparse table over the block minima covers whole blocks. A query
//! is at most two in-block lookups plus one sparse-table lookup.

use std::collections::HashMap;

use crate::batch::{AnswerSet, QueryBatch};
use crate::contraction::solve_contracted;
use crate::error::{Error, Result};
use crate::sparse_table::Levels;

pub const BLOCK: usize = 8;
const PAIRS: usize = BLOCK * (BLOCK + 1) / 2;

// Row `i` of the upper triangle starts after rows 0..i, of lengths BLOCK - r.
#[inline]
const fn pair_index(i: usize, j: usize) -> usize {
    i * BLOCK - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Ballot-sequence signature of a block's Cartesian tree shape.
///
/// A leading 1 bit is always present (the first push), so sequences of
/// different lengths never collide. Missing tail entries of a short final
/// block count as `+inf` and only push.
pub fn block_signature(block: &[i64]) -> u32 {
    debug_assert!(!block.is_empty() && block.len() <= BLOCK);
    let mut stack = [0i64; BLOCK];
    let mut depth = 0usize;
    let mut sig = 0u32;
    for &v in block {
        while depth > 0 && stack[depth - 1] > v {
            depth -= 1;
            sig <<= 1;
        }
        stack[depth] = v;
        depth += 1;
        sig = (sig << 1) | 1;
    }
    for _ in block.len()..BLOCK {
        sig = (sig << 1) | 1;
    }
    sig
}

/// Leftmost in-block argmin offsets for every `(i, j)` with `i <= j < BLOCK`.
fn in_block_answers(block: &[i64]) -> [u8; PAIRS] {
    let mut table = [0u8; PAIRS];
    for i in 0..BLOCK {
        let mut best = i;
        for j in i..BLOCK {
            // Padding (j >= len) never beats a real entry or an earlier pad.
            if j < block.len() && (best >= block.len() || block[j] < block[best]) {
                best = j;
            }
            table[pair_index(i, j)] = best as u8;
        }
    }
    table
}

/// `O(n)`-word, `O(1)`-query range minimum structure over a borrowed array.
#[derive(Debug, Clone)]
pub struct BlockRmq<'a> {
    values: &'a [i64],
    shape_of_block: Vec<u16>,
    shapes: Vec<[u8; PAIRS]>,
    block_min: Vec<i64>,
    block_arg: Vec<u32>,
    top: Levels,
}

impl<'a> BlockRmq<'a> {
    /// # Panics
    /// If `values` is empty or has more than `u32::MAX` entries.
    pub fn build(values: &'a [i64]) -> Self {
        let n = values.len();
        assert!(n > 0, "block RMQ over an empty array");
        assert!(n <= u32::MAX as usize, "block RMQ over {n} entries");
        let blocks = n.div_ceil(BLOCK);
        let mut shape_of_block = Vec::with_capacity(blocks);
        let mut shapes = Vec::new();
        let mut block_min = Vec::with_capacity(blocks);
        let mut block_arg = Vec::with_capacity(blocks);
        let mut seen: HashMap<u32, u16> = HashMap::new();

        for (b, block) in values.chunks(BLOCK).enumerate() {
            let sig = block_signature(block);
            let id = *seen.entry(sig).or_insert_with(|| {
                shapes.push(in_block_answers(block));
                (shapes.len() - 1) as u16
            });
            shape_of_block.push(id);
            let off = shapes[id as usize][pair_index(0, block.len() - 1)] as usize;
            block_min.push(block[off]);
            block_arg.push((b * BLOCK + off) as u32);
        }
        let top = Levels::build(&block_min);
        BlockRmq { values, shape_of_block, shapes, block_min, block_arg, top }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.shape_of_block.len()
    }

    /// Number of distinct block shapes encountered.
    pub fn shape_count(&self) -> usize {
        self.shapes.len()
    }

    pub fn block_shape(&self, b: usize) -> usize {
        self.shape_of_block[b] as usize
    }

    #[inline]
    fn in_block(&self, b: usize, i: usize, j: usize) -> usize {
        let table = &self.shapes[self.shape_of_block[b] as usize];
        b * BLOCK + table[pair_index(i, j)] as usize
    }

    #[inline]
    pub(crate) fn argmin(&self, i: usize, j: usize) -> usize {
        let (bi, bj) = (i / BLOCK, j / BLOCK);
        if bi == bj {
            return self.in_block(bi, i % BLOCK, j % BLOCK);
        }
        let mut best = self.in_block(bi, i % BLOCK, BLOCK - 1);
        if bi + 1 < bj {
            let mid = self.block_arg[self.top.argmin(&self.block_min, bi + 1, bj - 1)] as usize;
            if self.values[mid] < self.values[best] {
                best = mid;
            }
        }
        let right = self.in_block(bj, 0, j % BLOCK);
        if self.values[right] < self.values[best] {
            best = right;
        }
        best
    }

    /// Leftmost argmin of `values[i..=j]`.
    pub fn query(&self, i: usize, j: usize) -> Result<usize> {
        if i > j || j >= self.values.len() {
            return Err(Error::InvalidQuery { ordinal: 0, i, j, n: self.values.len() });
        }
        Ok(self.argmin(i, j))
    }
}

/// Answers `(i, j)` ranges over `values` with a [`BlockRmq`]. Pairs need `i <= j`.
pub fn block_rmq_batch(values: &[i64], queries: &[(usize, usize)]) -> Vec<usize> {
    if queries.is_empty() {
        return Vec::new();
    }
    let rmq = BlockRmq::build(values);
    queries.iter().map(|&(i, j)| rmq.argmin(i, j)).collect()
}

/// Builds the block structure over `a` and answers the batch.
pub fn on_rmq(a: &[i64], q: &QueryBatch) -> Result<AnswerSet> {
    q.validate(a.len())?;
    Ok(block_rmq_batch(a, q.pairs()))
}

/// [`on_rmq`] on the contracted array; `n + O(q)` time, `O(q)` space.
pub fn on_rmq_con(a: &mut [i64], q: &QueryBatch) -> Result<AnswerSet> {
    solve_contracted(a, q, None, block_rmq_batch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute_force::{bf_rmq, scan_argmin};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    const EXAMPLE: [i64; 22] = [
        17, 22, 38, 4, 5, 8, 2, 8, 9, 21, 0, 12, 8, 7, 13, 3, 6, 14, 1, 36, 0, 4,
    ];

    #[test]
    fn pair_index_is_a_dense_triangle() {
        let mut seen = vec![false; PAIRS];
        for i in 0..BLOCK {
            for j in i..BLOCK {
                let k = pair_index(i, j);
                assert!(!seen[k]);
                seen[k] = true;
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }

    #[test]
    fn equal_values_share_one_shape() {
        let a = [7i64; 16];
        let s = BlockRmq::build(&a);
        assert_eq!(s.block_count(), 2);
        assert_eq!(s.shape_count(), 1);
        let a = [7i64; 32];
        let s = BlockRmq::build(&a);
        assert_eq!(s.block_count(), 4);
        assert_eq!(s.shape_count(), 1);
        assert_eq!(s.query(3, 29), Ok(3));
    }

    #[test]
    fn increasing_blocks_answer_left_end() {
        let a: Vec<i64> = (0..16).collect();
        let s = BlockRmq::build(&a);
        for b in 0..2 {
            for i in b * BLOCK..(b + 1) * BLOCK {
                for j in i..(b + 1) * BLOCK {
                    assert_eq!(s.query(i, j), Ok(i));
                }
            }
        }
    }

    #[test]
    fn exhaustive_on_random_arrays() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in [1usize, 7, 8, 9, 63, 256, 512] {
            let a: Vec<i64> = (0..n).map(|_| rng.gen_range(0..20)).collect();
            let s = BlockRmq::build(&a);
            for i in 0..n {
                for j in i..n {
                    assert_eq!(s.query(i, j).unwrap(), scan_argmin(&a, i, j), "n={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn equal_signatures_mean_equal_answers() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let mut by_sig: HashMap<u32, Vec<Vec<i64>>> = HashMap::new();
        for _ in 0..4000 {
            let len = rng.gen_range(1..=BLOCK);
            let block: Vec<i64> = (0..len).map(|_| rng.gen_range(0..4)).collect();
            by_sig.entry(block_signature(&block)).or_default().push(block);
        }
        assert!(by_sig.len() <= 4usize.pow(BLOCK as u32));
        for blocks in by_sig.values() {
            let reference = in_block_answers(&blocks[0]);
            for b in blocks {
                for i in 0..b.len() {
                    for j in i..b.len() {
                        assert_eq!(scan_argmin(b, i, j), reference[pair_index(i, j)] as usize);
                    }
                }
            }
        }
    }

    #[test]
    fn batch_examples() {
        let q = QueryBatch::new(vec![(4, 18), (0, 6), (6, 10)]);
        assert_eq!(on_rmq(&EXAMPLE, &q), Ok(vec![10, 6, 10]));
        let mut a = EXAMPLE.to_vec();
        assert_eq!(on_rmq_con(&mut a, &q), Ok(vec![10, 6, 10]));
        assert_eq!(on_rmq_con(&mut a, &QueryBatch::default()), Ok(vec![]));
        assert_eq!(on_rmq(&a, &QueryBatch::default()), Ok(vec![]));
        assert_eq!(a, EXAMPLE);
    }

    #[test]
    fn large_random_batch() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let n = 100_000;
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(0..1 << 31)).collect();
        let pairs: Vec<_> = (0..316)
            .map(|_| {
                let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
                (x.min(y), x.max(y))
            })
            .collect();
        let q = QueryBatch::new(pairs);
        let expected = bf_rmq(&a, &q).unwrap();
        assert_eq!(on_rmq(&a, &q).unwrap(), expected);
        let mut b = a.clone();
        assert_eq!(on_rmq_con(&mut b, &q).unwrap(), expected);
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn matches_scan(a in prop::collection::vec(-3i64..3, 1..100)) {
            let s = BlockRmq::build(&a);
            for i in 0..a.len() {
                for j in i..a.len() {
                    prop_assert_eq!(s.query(i, j).unwrap(), scan_argmin(&a, i, j));
                }
            }
        }
    }
}
