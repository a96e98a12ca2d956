//! Sparse tables: the classic `O(n log n)` structure and the batched variant
//! that keeps a single doubling level of size `O(q)` over a contracted array.

use crate::batch::{AnswerSet, QueryBatch};
use crate::contraction::solve_contracted;
use crate::error::{Error, Result};

#[inline]
pub(crate) fn floor_log2(x: usize) -> u32 {
    debug_assert!(x > 0);
    usize::BITS - 1 - x.leading_zeros()
}

/// Power-of-two window argmins, independent of where the values live.
#[derive(Debug, Clone)]
pub(crate) struct Levels {
    rows: Vec<Vec<u32>>,
}

impl Levels {
    pub(crate) fn build(values: &[i64]) -> Self {
        let n = values.len();
        assert!(n <= u32::MAX as usize, "sparse table over {n} entries");
        let mut rows = Vec::with_capacity(if n == 0 { 0 } else { floor_log2(n) as usize + 1 });
        if n == 0 {
            return Levels { rows };
        }
        rows.push((0..n as u32).collect::<Vec<_>>());
        let mut half = 1usize;
        while 2 * half <= n {
            let prev = rows.last().unwrap();
            let row: Vec<u32> = (0..=n - 2 * half)
                .map(|m| {
                    let (a, b) = (prev[m], prev[m + half]);
                    if values[a as usize] <= values[b as usize] {
                        a
                    } else {
                        b
                    }
                })
                .collect();
            rows.push(row);
            half *= 2;
        }
        Levels { rows }
    }

    #[inline]
    pub(crate) fn argmin(&self, values: &[i64], i: usize, j: usize) -> usize {
        if i == j {
            return i;
        }
        let k = floor_log2(j - i) as usize;
        let row = &self.rows[k];
        let a = row[i] as usize;
        let b = row[j + 1 - (1 << k)] as usize;
        if values[a] <= values[b] {
            a
        } else {
            b
        }
    }
}

/// Classic sparse table over a borrowed array.
///
/// Row `k` holds the leftmost argmin of every window of length `2^k`.
#[derive(Debug, Clone)]
pub struct SparseTable<'a> {
    values: &'a [i64],
    levels: Levels,
}

impl<'a> SparseTable<'a> {
    /// Builds all `floor(log n) + 1` rows.
    ///
    /// # Panics
    /// If `values` has more than `u32::MAX` entries.
    pub fn build(values: &'a [i64]) -> Self {
        SparseTable { values, levels: Levels::build(values) }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn level_count(&self) -> usize {
        self.levels.rows.len()
    }

    /// Argmins of windows of length `2^k`.
    pub fn level(&self, k: usize) -> &[u32] {
        &self.levels.rows[k]
    }

    /// Leftmost argmin of `values[i..=j]`.
    pub fn query(&self, i: usize, j: usize) -> Result<usize> {
        if i > j || j >= self.values.len() {
            return Err(Error::InvalidQuery { ordinal: 0, i, j, n: self.values.len() });
        }
        Ok(self.levels.argmin(self.values, i, j))
    }
}

/// Builds a sparse table over `a` and answers the batch from it.
pub fn st_rmq(a: &[i64], q: &QueryBatch) -> Result<AnswerSet> {
    q.validate(a.len())?;
    if q.is_empty() {
        return Ok(Vec::new());
    }
    let table = SparseTable::build(a);
    Ok(q.iter().map(|(i, j)| table.levels.argmin(a, i, j)).collect())
}

/// One sparse-table row kept in place: at level `k`, entry `m` is the
/// `(value, position)` minimum of `values[m..min(m + 2^k, len)]`, compared
/// lexicographically so ties resolve to the leftmost position.
#[derive(Debug, Clone)]
pub struct DoublingArray {
    d: Vec<(i64, usize)>,
    level: u32,
}

impl DoublingArray {
    pub fn new(values: &[i64]) -> Self {
        DoublingArray {
            d: values.iter().copied().zip(0..).collect(),
            level: 0,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    #[inline]
    pub fn window(&self, m: usize) -> (i64, usize) {
        self.d[m]
    }

    /// Minimum over `values[i..=j]` where `2^level <= j - i + 1 <= 2^(level+1)`.
    #[inline]
    pub fn cover(&self, i: usize, j: usize) -> (i64, usize) {
        let w = 1usize << self.level;
        self.d[i].min(self.d[j + 1 - w])
    }

    /// Advances from windows of length `2^k` to `2^(k+1)`; windows running
    /// past the end stay clamped.
    pub fn double(&mut self) {
        let w = 1usize << self.level;
        let len = self.d.len();
        if w < len {
            for m in 0..len - w {
                let right = self.d[m + w];
                if right < self.d[m] {
                    self.d[m] = right;
                }
            }
        }
        self.level += 1;
    }
}

/// Queries grouped by `floor(log2(j - i))`, as intrusive linked lists.
#[derive(Debug, Clone)]
struct QueryBuckets {
    heads: Vec<usize>,
    next: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl QueryBuckets {
    fn new(q: usize) -> Self {
        QueryBuckets { heads: Vec::new(), next: vec![NIL; q] }
    }

    fn push(&mut self, bucket: usize, ordinal: usize) {
        if self.heads.len() <= bucket {
            self.heads.resize(bucket + 1, NIL);
        }
        self.next[ordinal] = self.heads[bucket];
        self.heads[bucket] = ordinal;
    }

    /// Number of buckets up to the last non-empty one.
    fn count(&self) -> usize {
        self.heads.len()
    }

    fn members(&self, bucket: usize) -> impl Iterator<Item = usize> + '_ {
        let mut cur = self.heads[bucket];
        std::iter::from_fn(move || {
            if cur == NIL {
                return None;
            }
            let t = cur;
            cur = self.next[t];
            Some(t)
        })
    }
}

/// Answers `(i, j)` ranges over `values` by sweeping buckets of increasing
/// window size while doubling one level array. `O(len + q log len)` time and
/// `O(len + q)` space. Pairs need `i <= j`.
pub fn doubling_sweep(values: &[i64], queries: &[(usize, usize)]) -> Vec<usize> {
    let mut answers = vec![0usize; queries.len()];
    let mut buckets = QueryBuckets::new(queries.len());
    for (t, &(i, j)) in queries.iter().enumerate() {
        if i == j {
            answers[t] = i;
        } else {
            buckets.push(floor_log2(j - i) as usize, t);
        }
    }
    if buckets.count() == 0 {
        return answers;
    }

    let mut d = DoublingArray::new(values);
    for k in 0..buckets.count() {
        for t in buckets.members(k) {
            let (i, j) = queries[t];
            answers[t] = d.cover(i, j).1;
        }
        if k + 1 < buckets.count() {
            d.double();
        }
    }
    answers
}

/// Contracts `a`, answers the batch with [`doubling_sweep`], restores `a`.
/// `n + O(q log q)` time and `O(q)` extra space.
pub fn st_rmq_con(a: &mut [i64], q: &QueryBatch) -> Result<AnswerSet> {
    st_rmq_con_bounded(a, q, None)
}

/// [`st_rmq_con`] with a caller-supplied upper bound on the entries of `a`,
/// which saves the pass that would otherwise find the maximum.
pub fn st_rmq_con_bounded(a: &mut [i64], q: &QueryBatch, mu: Option<i64>) -> Result<AnswerSet> {
    solve_contracted(a, q, mu, doubling_sweep)
}
