//! Linear-scan answers: the reference every other algorithm is checked
//! against, plus its contracted flavour.

use crate::batch::{AnswerSet, QueryBatch};
use crate::contraction::solve_contracted;
use crate::error::Result;

/// Leftmost position of the minimum of `a[i..=j]`.
#[inline]
pub fn scan_argmin(a: &[i64], i: usize, j: usize) -> usize {
    let mut best = i;
    for p in i + 1..=j {
        if a[p] < a[best] {
            best = p;
        }
    }
    best
}

/// Answers every query by scanning its range. `O(qn)` time, no extra space.
pub fn bf_rmq(a: &[i64], q: &QueryBatch) -> Result<AnswerSet> {
    q.validate(a.len())?;
    Ok(q.iter().map(|(i, j)| scan_argmin(a, i, j)).collect())
}

/// Contracts `a`, scans each remapped range, and restores `a`.
pub fn bf_rmq_con(a: &mut [i64], q: &QueryBatch) -> Result<AnswerSet> {
    solve_contracted(a, q, None, |a_q, remapped| {
        remapped.iter().map(|&(i, j)| scan_argmin(a_q, i, j)).collect()
    })
}
