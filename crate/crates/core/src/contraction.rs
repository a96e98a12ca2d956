//! Contraction of an array down to the positions a query batch can observe.
//!
//! Every query endpoint is marked in place by overwriting it with `mu + k`,
//! where `mu` bounds the array from above and `k` counts marks issued so far.
//! The displaced value goes to slot `(mu + k) mod 2q` of a small side table
//! together with a linked list of the query endpoints that point at it. One
//! more left-to-right scan then emits each marked position verbatim and each
//! maximal unmarked block as its leftmost minimum, rewriting query endpoints as
//! their marks are reached. The result has at most `4q + 1` entries, and the
//! original array is recovered by writing the contracted values back through
//! the position map.

use crate::batch::{AnswerSet, QueryBatch};
use crate::error::{Error, Result};

const NIL: usize = usize::MAX;

/// Word-addressable storage the contraction reads and rewrites.
///
/// Implemented for plain slices; tests wrap it to count accesses.
pub trait Cells {
    fn len(&self) -> usize;
    fn get(&self, index: usize) -> i64;
    fn set(&mut self, index: usize, value: i64);

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Cells for [i64] {
    #[inline]
    fn len(&self) -> usize {
        <[i64]>::len(self)
    }

    #[inline]
    fn get(&self, index: usize) -> i64 {
        self[index]
    }

    #[inline]
    fn set(&mut self, index: usize, value: i64) {
        self[index] = value;
    }
}

impl Cells for Vec<i64> {
    #[inline]
    fn len(&self) -> usize {
        self.as_slice().len()
    }

    #[inline]
    fn get(&self, index: usize) -> i64 {
        self[index]
    }

    #[inline]
    fn set(&mut self, index: usize, value: i64) {
        self[index] = value;
    }
}

/// Largest entry, in one left-to-right pass.
pub fn find_max<C: Cells + ?Sized>(a: &C) -> Result<i64> {
    let n = a.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut mu = a.get(0);
    for i in 1..n {
        let v = a.get(i);
        if v > mu {
            mu = v;
        }
    }
    Ok(mu)
}

/// Which side of a query a list entry refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Left,
    Right,
}

/// The two `2q`-slot side tables used while marking: saved original values
/// and, per slot, a linked list of the query endpoints sitting on that mark.
#[derive(Debug, Clone)]
pub struct MarkTables<V> {
    saved: Vec<V>,
    heads: Vec<usize>,
    next: Vec<usize>,
    issued: usize,
}

impl<V: Copy + Default> MarkTables<V> {
    /// Tables for a batch of `q >= 1` queries.
    pub fn new(q: usize) -> Self {
        MarkTables {
            saved: vec![V::default(); 2 * q],
            heads: vec![NIL; 2 * q],
            next: vec![NIL; 2 * q],
            issued: 0,
        }
    }

    pub fn slots(&self) -> usize {
        self.saved.len()
    }

    /// Number of distinct positions marked so far.
    pub fn marks_issued(&self) -> usize {
        self.issued
    }

    /// Opens the list for a freshly issued mark and returns its counter `k`
    /// (starting at 1).
    pub fn issue(&mut self, slot: usize, original: V, ordinal: usize, side: Endpoint) -> usize {
        self.issued += 1;
        self.saved[slot] = original;
        self.heads[slot] = NIL;
        self.attach(slot, ordinal, side);
        self.issued
    }

    /// Adds another query endpoint to an existing mark's list.
    pub fn attach(&mut self, slot: usize, ordinal: usize, side: Endpoint) {
        let r = 2 * ordinal + (side == Endpoint::Right) as usize;
        self.next[r] = self.heads[slot];
        self.heads[slot] = r;
    }

    pub fn original(&self, slot: usize) -> V {
        self.saved[slot]
    }

    /// Query endpoints attached to `slot`, most recent first.
    pub fn endpoints(&self, slot: usize) -> Endpoints<'_> {
        Endpoints { next: &self.next, cur: self.heads[slot] }
    }
}

pub struct Endpoints<'a> {
    next: &'a [usize],
    cur: usize,
}

impl Iterator for Endpoints<'_> {
    type Item = (usize, Endpoint);

    fn next(&mut self) -> Option<Self::Item> {
        if self.cur == NIL {
            return None;
        }
        let r = self.cur;
        self.cur = self.next[r];
        let side = if r & 1 == 0 { Endpoint::Left } else { Endpoint::Right };
        Some((r / 2, side))
    }
}

/// Writes `p` into the `side` endpoint of a remapped query.
#[inline]
pub(crate) fn set_endpoint(pair: &mut (usize, usize), side: Endpoint, p: usize) {
    match side {
        Endpoint::Left => pair.0 = p,
        Endpoint::Right => pair.1 = p,
    }
}

/// An array reduced to the entries a batch can observe, with the position map
/// back to the original array and the batch rewritten onto it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractedArray {
    a_q: Vec<i64>,
    f: Vec<usize>,
    remapped: Vec<(usize, usize)>,
    mu: i64,
    is_mark: Vec<bool>,
}

impl ContractedArray {
    /// The contracted values.
    pub fn values(&self) -> &[i64] {
        &self.a_q
    }

    /// Original position of every contracted entry; strictly increasing.
    pub fn positions(&self) -> &[usize] {
        &self.f
    }

    /// The batch rewritten onto contracted positions, parallel to the input.
    pub fn remapped(&self) -> &[(usize, usize)] {
        &self.remapped
    }

    pub fn mu(&self) -> i64 {
        self.mu
    }

    pub fn len(&self) -> usize {
        self.a_q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a_q.is_empty()
    }

    /// Whether contracted entry `p` is a marked query endpoint rather than a
    /// block minimum.
    pub fn is_mark(&self, p: usize) -> bool {
        self.is_mark[p]
    }

    /// Original positions of all marked entries, ascending.
    pub fn marked_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.f
            .iter()
            .zip(&self.is_mark)
            .filter_map(|(&pos, &m)| m.then_some(pos))
    }

    /// Maps an answer over the contracted array back to the original array.
    pub fn map_answer(&self, p: usize) -> Result<usize> {
        self.f
            .get(p)
            .copied()
            .ok_or(Error::OutOfRange { index: p, len: self.f.len() })
    }

    /// Undoes the marking of `a` in `O(q)` time.
    ///
    /// Block minima are written back too; they hold their original values, so
    /// the extra writes are no-ops and restoring twice is harmless.
    pub fn restore<C: Cells + ?Sized>(&self, a: &mut C) {
        for (&pos, &v) in self.f.iter().zip(&self.a_q) {
            a.set(pos, v);
        }
    }
}

/// Contracts `a` with respect to `q`, leaving `a` marked.
///
/// `mu` may be supplied when an upper bound on the entries is already known;
/// the contraction then reads the array in a single pass instead of two. It
/// must be at least the true maximum. Call [`ContractedArray::restore`] to
/// undo the marking.
pub fn contract<C: Cells + ?Sized>(
    a: &mut C,
    q: &QueryBatch,
    mu: Option<i64>,
) -> Result<ContractedArray> {
    let n = a.len();
    q.validate(n)?;
    if q.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let slots = 2 * q.len();
    let mu = match mu {
        Some(mu) => mu,
        None => find_max(a)?,
    };
    let overflow = Error::MarkOverflow { base: mu as i128, marks: slots };
    let slots_word = i64::try_from(slots).map_err(|_| overflow.clone())?;
    if mu.checked_add(slots_word).is_none() {
        return Err(overflow);
    }
    let slot_of = |v: i64| v.rem_euclid(slots_word) as usize;

    let mut tables = MarkTables::<i64>::new(q.len());
    for (ordinal, (i, j)) in q.iter().enumerate() {
        for (pos, side) in [(i, Endpoint::Left), (j, Endpoint::Right)] {
            let v = a.get(pos);
            if v <= mu {
                let mark = mu + tables.marks_issued() as i64 + 1;
                tables.issue(slot_of(mark), v, ordinal, side);
                a.set(pos, mark);
            } else {
                tables.attach(slot_of(v), ordinal, side);
            }
        }
    }

    let capacity = (2 * tables.marks_issued() + 1).min(n);
    let mut a_q = Vec::with_capacity(capacity);
    let mut f = Vec::with_capacity(capacity);
    let mut is_mark = Vec::with_capacity(capacity);
    let mut remapped = vec![(0usize, 0usize); q.len()];

    // Current unmarked block: leftmost minimum and its position.
    let mut block: Option<(i64, usize)> = None;
    for pos in 0..n {
        let v = a.get(pos);
        if v > mu {
            if let Some((bv, bp)) = block.take() {
                a_q.push(bv);
                f.push(bp);
                is_mark.push(false);
            }
            let slot = slot_of(v);
            let p = a_q.len();
            a_q.push(tables.original(slot));
            f.push(pos);
            is_mark.push(true);
            for (ordinal, side) in tables.endpoints(slot) {
                set_endpoint(&mut remapped[ordinal], side, p);
            }
        } else {
            match block {
                Some((bv, _)) if bv <= v => {}
                _ => block = Some((v, pos)),
            }
        }
    }
    if let Some((bv, bp)) = block {
        a_q.push(bv);
        f.push(bp);
        is_mark.push(false);
    }

    Ok(ContractedArray { a_q, f, remapped, mu, is_mark })
}

/// Runs `solve` on the contraction of `a` and maps its answers back.
///
/// `solve` receives the contracted values and the remapped batch and returns
/// one contracted position per query. The array is restored before this
/// returns. An empty batch short-circuits without reading `a`.
pub fn solve_contracted<C, F>(
    a: &mut C,
    q: &QueryBatch,
    mu: Option<i64>,
    solve: F,
) -> Result<AnswerSet>
where
    C: Cells + ?Sized,
    F: FnOnce(&[i64], &[(usize, usize)]) -> Vec<usize>,
{
    q.validate(a.len())?;
    if q.is_empty() {
        return Ok(Vec::new());
    }
    let contracted = contract(a, q, mu)?;
    let local = solve(&contracted.a_q, &contracted.remapped);
    contracted.restore(a);
    Ok(local.into_iter().map(|p| contracted.f[p]).collect())
}
