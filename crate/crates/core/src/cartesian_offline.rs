//! Cartesian trees and offline LCA, and the RMQ algorithms built from them.
//!
//! The range minimum of `a[i..=j]` is the lowest common ancestor of nodes `i`
//! and `j` in the Cartesian tree of `a`. The LCAs of a whole batch come out of
//! a single depth-first walk with a disjoint-set forest (Tarjan's offline
//! algorithm, union by rank and path compression).

use crate::batch::{AnswerSet, NodeQueryBatch, QueryBatch};
use crate::contraction::solve_contracted;
use crate::error::Result;
use crate::tree::{walk, LabeledTree, RootedTree, Step, NONE};

/// Binary tree over array positions whose root is the leftmost minimum and
/// whose subtrees are the Cartesian trees of the two flanks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartesianTree {
    root: u32,
    left: Vec<u32>,
    right: Vec<u32>,
    parent: Vec<u32>,
}

#[inline]
fn opt(v: u32) -> Option<usize> {
    (v != NONE).then_some(v as usize)
}

impl CartesianTree {
    /// Linear-time construction along the right spine. An entry only pops
    /// strictly greater values, so equal values stay ancestors of later
    /// ones and each subrange is rooted at its leftmost minimum.
    ///
    /// # Panics
    /// If `a` is empty or has `u32::MAX` or more entries.
    pub fn build(a: &[i64]) -> Self {
        let n = a.len();
        assert!(n > 0, "Cartesian tree of an empty array");
        assert!(n < NONE as usize, "Cartesian tree over {n} entries");
        let mut left = vec![NONE; n];
        let mut right = vec![NONE; n];
        let mut parent = vec![NONE; n];
        let mut spine: Vec<u32> = Vec::new();
        for i in 0..n {
            let mut last = NONE;
            while let Some(&top) = spine.last() {
                if a[top as usize] > a[i] {
                    last = top;
                    spine.pop();
                } else {
                    break;
                }
            }
            left[i] = last;
            if last != NONE {
                parent[last as usize] = i as u32;
            }
            if let Some(&top) = spine.last() {
                right[top as usize] = i as u32;
                parent[i] = top;
            }
            spine.push(i as u32);
        }
        CartesianTree { root: spine[0], left, right, parent }
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn left(&self, v: usize) -> Option<usize> {
        opt(self.left[v])
    }

    pub fn right(&self, v: usize) -> Option<usize> {
        opt(self.right[v])
    }

    /// Positions in symmetric order; always `0..n` for a valid tree.
    pub fn in_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = Vec::new();
        let mut cur = Some(self.root as usize);
        while cur.is_some() || !stack.is_empty() {
            while let Some(v) = cur {
                stack.push(v);
                cur = self.left(v);
            }
            let v = stack.pop().unwrap();
            out.push(v);
            cur = self.right(v);
        }
        out
    }
}

impl RootedTree for CartesianTree {
    fn node_count(&self) -> usize {
        self.left.len()
    }

    fn root(&self) -> usize {
        self.root as usize
    }

    #[inline]
    fn parent(&self, v: usize) -> Option<usize> {
        opt(self.parent[v])
    }

    #[inline]
    fn first_child(&self, v: usize) -> Option<usize> {
        opt(self.left[v]).or_else(|| opt(self.right[v]))
    }

    #[inline]
    fn next_sibling(&self, v: usize) -> Option<usize> {
        let p = opt(self.parent[v])?;
        if self.left[p] == v as u32 {
            opt(self.right[p])
        } else {
            None
        }
    }
}

/// Disjoint-set forest with union by rank and path compression.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n as u32).collect(), rank: vec![0; n] }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = x;
        while cur != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    /// Merges the sets of `a` and `b`; returns the new representative.
    pub fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return ra;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi as u32;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        hi
    }
}

/// Offline LCA of node pairs over any rooted tree; answers are node indices
/// in query order. `O((n + q) α(n))` time, `O(n + q)` space.
pub fn offline_lca_nodes<T: RootedTree + ?Sized>(tree: &T, pairs: &[(usize, usize)]) -> Vec<usize> {
    let n = tree.node_count();
    let mut answers = vec![0usize; pairs.len()];
    if pairs.is_empty() {
        return answers;
    }
    // Per-node lists of query endpoints; entry r is side r & 1 of query r / 2.
    let mut head = vec![usize::MAX; n];
    let mut next = vec![usize::MAX; 2 * pairs.len()];
    for (t, &(u, v)) in pairs.iter().enumerate() {
        for (r, node) in [(2 * t, u), (2 * t + 1, v)] {
            next[r] = head[node];
            head[node] = r;
        }
    }

    let mut sets = DisjointSets::new(n);
    let mut ancestor: Vec<u32> = (0..n as u32).collect();
    let mut finished = vec![false; n];

    let mut finish = |u: usize, sets: &mut DisjointSets, ancestor: &[u32]| {
        finished[u] = true;
        let mut r = head[u];
        while r != usize::MAX {
            let (t, side) = (r / 2, r & 1);
            let other = if side == 0 { pairs[t].1 } else { pairs[t].0 };
            if finished[other] {
                answers[t] = ancestor[sets.find(other)] as usize;
            }
            r = next[r];
        }
    };

    walk(tree, |step| {
        if let Step::Return { parent, child } = step {
            finish(child, &mut sets, &ancestor);
            let rep = sets.union(parent, child);
            ancestor[rep] = parent as u32;
        }
    });
    finish(tree.root(), &mut sets, &ancestor);
    answers
}

/// Offline LCA over a labelled tree; answers are labels.
pub fn offline_lca(tree: &LabeledTree, q: &NodeQueryBatch) -> Result<AnswerSet> {
    q.validate(tree.len())?;
    Ok(offline_lca_nodes(tree, q.pairs())
        .into_iter()
        .map(|v| tree.label(v))
        .collect())
}

/// Cartesian tree of `a`, then offline LCA over it.
pub fn off_rmq(a: &[i64], q: &QueryBatch) -> Result<AnswerSet> {
    q.validate(a.len())?;
    if q.is_empty() {
        return Ok(Vec::new());
    }
    let tree = CartesianTree::build(a);
    Ok(offline_lca_nodes(&tree, q.pairs()))
}

/// [`off_rmq`] on the contracted array; `n + O(q α(q))` time, `O(q)` space.
pub fn off_rmq_con(a: &mut [i64], q: &QueryBatch) -> Result<AnswerSet> {
    solve_contracted(a, q, None, |a_q, remapped| {
        let tree = CartesianTree::build(a_q);
        offline_lca_nodes(&tree, remapped)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute_force::{bf_rmq, scan_argmin};
    use proptest::prelude::*;

    const EXAMPLE: [i64; 22] = [
        17, 22, 38, 4, 5, 8, 2, 8, 9, 21, 0, 12, 8, 7, 13, 3, 6, 14, 1, 36, 0, 4,
    ];

    fn naive_lca<T: RootedTree>(t: &T, u: usize, v: usize) -> usize {
        let mut path = vec![u];
        let mut cur = u;
        while let Some(p) = t.parent(cur) {
            path.push(p);
            cur = p;
        }
        let mut cur = v;
        loop {
            if path.contains(&cur) {
                return cur;
            }
            cur = t.parent(cur).unwrap();
        }
    }

    #[test]
    fn build_examples() {
        let t = CartesianTree::build(&[2, 1, 3]);
        assert_eq!(t.root(), 1);
        assert_eq!(t.left(1), Some(0));
        assert_eq!(t.right(1), Some(2));

        let t = CartesianTree::build(&[1, 1]);
        assert_eq!(t.root(), 0);
        assert_eq!(t.right(0), Some(1));
        assert_eq!(t.left(0), None);

        let t = CartesianTree::build(&[5]);
        assert_eq!(t.root(), 0);
        assert_eq!(t.first_child(0), None);
    }

    #[test]
    fn offline_lca_examples() {
        let path = LabeledTree::from_parents(&[None, Some(0), Some(1)]).unwrap();
        assert_eq!(offline_lca(&path, &NodeQueryBatch::new(vec![(1, 2)])), Ok(vec![1]));
        let star = LabeledTree::from_parents(&[None, Some(0), Some(0), Some(0)]).unwrap();
        assert_eq!(
            offline_lca(&star, &NodeQueryBatch::new(vec![(1, 2), (3, 3), (0, 2)])),
            Ok(vec![0, 3, 0])
        );
        assert!(offline_lca(&star, &NodeQueryBatch::new(vec![(1, 4)])).is_err());
    }

    #[test]
    fn offline_lca_on_random_trees() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = 200;
            let parents: Vec<Option<usize>> = (0..n)
                .map(|v| if v == 0 { None } else { Some(rng.gen_range(0..v)) })
                .collect();
            let t = LabeledTree::from_parents(&parents).unwrap();
            let pairs: Vec<_> = (0..50).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
            let got = offline_lca(&t, &NodeQueryBatch::new(pairs.clone())).unwrap();
            for (t_, &(u, v)) in pairs.iter().enumerate() {
                assert_eq!(got[t_], naive_lca(&t, u, v));
            }
        }
    }

    #[test]
    fn rmq_examples() {
        let q = QueryBatch::new(vec![(4, 18), (0, 6), (6, 10)]);
        assert_eq!(off_rmq(&EXAMPLE, &q), Ok(vec![10, 6, 10]));
        let mut a = EXAMPLE.to_vec();
        assert_eq!(off_rmq_con(&mut a, &q), Ok(vec![10, 6, 10]));
        assert_eq!(off_rmq_con(&mut a, &QueryBatch::new(vec![(0, 0)])), Ok(vec![0]));
        assert_eq!(a, EXAMPLE);
    }

    #[test]
    fn random_large_batch_against_scan() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let a: Vec<i64> = (0..10_000).map(|_| rng.gen_range(0..1000)).collect();
        let pairs: Vec<_> = (0..100)
            .map(|_| {
                let (x, y) = (rng.gen_range(0..10_000), rng.gen_range(0..10_000));
                (x.min(y), x.max(y))
            })
            .collect();
        let q = QueryBatch::new(pairs);
        let expected = bf_rmq(&a, &q).unwrap();
        assert_eq!(off_rmq(&a, &q).unwrap(), expected);
        let mut b = a.clone();
        assert_eq!(off_rmq_con(&mut b, &q).unwrap(), expected);
        assert_eq!(a, b);
    }

    #[test]
    fn dsu_merges_and_compresses() {
        let mut s = DisjointSets::new(5);
        s.union(0, 1);
        s.union(2, 3);
        assert_ne!(s.find(1), s.find(3));
        s.union(1, 3);
        assert_eq!(s.find(0), s.find(2));
        assert_ne!(s.find(4), s.find(0));
    }

    proptest! {
        #[test]
        fn subrange_roots_are_leftmost_minima(a in prop::collection::vec(0i64..5, 1..64)) {
            let t = CartesianTree::build(&a);
            prop_assert_eq!(t.in_order(), (0..a.len()).collect::<Vec<_>>());
            for i in 0..a.len() {
                for j in i..a.len() {
                    prop_assert_eq!(naive_lca(&t, i, j), scan_argmin(&a, i, j));
                }
            }
        }

        #[test]
        fn heap_order_holds(a in prop::collection::vec(-10i64..10, 1..100)) {
            let t = CartesianTree::build(&a);
            for v in 0..a.len() {
                if let Some(p) = t.parent(v) {
                    prop_assert!(a[p] <= a[v]);
                    // Equal values never sit in a left subtree.
                    if t.left(p) == Some(v) {
                        prop_assert!(a[p] < a[v]);
                    }
                }
            }
        }
    }
}
