//! Batched LCA by contracting the Euler tour of the tree.
//!
//! Query nodes are marked by rewriting their label to `n - 1 + k`. One
//! depth-first walk then records the first visit of every marked node and, for
//! each maximal run of other visits, the single node of minimum depth. The
//! result is two `O(q)` arrays, node labels and their depths, over which every
//! query becomes a range minimum between first occurrences.
//!
//! When node ids already are the preorder, the walk is replaced by a
//! sequential scan over the stored parent and depth arrays that produces the
//! same output.

use crate::batch::{AnswerSet, NodeQueryBatch};
use crate::cartesian_offline::offline_lca;
use crate::contraction::{set_endpoint, Endpoint, MarkTables};
use crate::error::{Error, Result};
use crate::online_rmq::block_rmq_batch;
use crate::sparse_table::doubling_sweep;
use crate::tree::{walk, LabeledTree, RootedTree, Step};

/// Batch size relative to `n` from which [`lca_batch`] answers on the full
/// tree instead of contracting it.
pub const DEFAULT_OFFLINE_RATIO: f64 = 0.25;

/// Contracted Euler tour: node labels, their depths, and the batch rewritten
/// to first occurrences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerContraction {
    e_q: Vec<usize>,
    l_q: Vec<i64>,
    remapped: Vec<(usize, usize)>,
    is_mark: Vec<bool>,
}

impl EulerContraction {
    fn with_capacity(queries: usize, capacity: usize) -> Self {
        EulerContraction {
            e_q: Vec::with_capacity(capacity),
            l_q: Vec::with_capacity(capacity),
            remapped: vec![(0, 0); queries],
            is_mark: Vec::with_capacity(capacity),
        }
    }

    fn push_run(&mut self, level: i64, label: usize) {
        self.e_q.push(label);
        self.l_q.push(level);
        self.is_mark.push(false);
    }

    /// Appends the first visit of the marked node in `slot` and points its
    /// query endpoints at it.
    fn push_mark(&mut self, slot: usize, level: i64, marks: &MarkTables<usize>) {
        let p = self.e_q.len();
        self.e_q.push(marks.original(slot));
        self.l_q.push(level);
        self.is_mark.push(true);
        for (ordinal, side) in marks.endpoints(slot) {
            set_endpoint(&mut self.remapped[ordinal], side, p);
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.e_q
    }

    pub fn levels(&self) -> &[i64] {
        &self.l_q
    }

    pub fn remapped(&self) -> &[(usize, usize)] {
        &self.remapped
    }

    pub fn len(&self) -> usize {
        self.e_q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e_q.is_empty()
    }

    pub fn is_mark(&self, p: usize) -> bool {
        self.is_mark[p]
    }

    /// Puts back the labels of every marked node.
    pub fn restore(&self, tree: &mut LabeledTree) {
        for (&label, &m) in self.e_q.iter().zip(&self.is_mark) {
            if m {
                tree.set_label(label, label);
            }
        }
    }

    /// Remapped pairs ordered so that the left endpoint comes first.
    fn ranges(&self) -> Vec<(usize, usize)> {
        self.remapped.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
    }
}

/// Marks every query node by rewriting its label to `n - 1 + k`.
pub fn mark_nodes(tree: &mut LabeledTree, q: &NodeQueryBatch) -> Result<MarkTables<usize>> {
    let n = tree.len();
    q.validate(n)?;
    if q.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let slots = 2 * q.len();
    if n.checked_add(slots).is_none() {
        return Err(Error::MarkOverflow { base: n as i128, marks: slots });
    }
    let mut tables = MarkTables::<usize>::new(q.len());
    for (ordinal, &(u, v)) in q.pairs().iter().enumerate() {
        for (node, side) in [(u, Endpoint::Left), (v, Endpoint::Right)] {
            let label = tree.label(node);
            if label < n {
                let mark = n + tables.marks_issued();
                tables.issue(mark % slots, label, ordinal, side);
                tree.set_label(node, mark);
            } else {
                tables.attach(label % slots, ordinal, side);
            }
        }
    }
    Ok(tables)
}

/// Contracted Euler tour of a marked tree.
pub fn euler_contract(tree: &LabeledTree, q: &NodeQueryBatch, marks: &MarkTables<usize>) -> EulerContraction {
    if tree.is_preorder() {
        euler_contract_preorder(tree, q.len(), marks)
    } else {
        euler_contract_on(tree, tree.labels(), q.len(), marks)
    }
}

/// The same contraction for a tree whose ids are its preorder, as a single
/// sequential scan. Between entering `i - 1` and entering `i` the walk
/// returns from `i - 1` up to `parent(i)`; those visits get strictly
/// shallower, so `parent(i)` at depth `depth(i) - 1` is the only one that can
/// become the minimum of its run. After the last node the walk climbs back to
/// the root.
fn euler_contract_preorder(tree: &LabeledTree, queries: usize, marks: &MarkTables<usize>) -> EulerContraction {
    let labels = tree.labels();
    let n = labels.len();
    let slots = marks.slots();
    let (parent, depth) = tree.parents_and_depths();
    let mut out = EulerContraction::with_capacity(queries, 2 * marks.marks_issued() + 1);
    // Shallowest node of the current run; `i64::MAX` while the run is empty.
    let mut run_level = i64::MAX;
    let mut run_node = 0usize;
    for i in 0..n {
        let d = depth[i] as i64;
        let p = parent[i] as usize;
        // No climb before the root or before the first child of `i - 1`.
        let climb = if i != 0 && p + 1 != i { d - 1 } else { i64::MAX };
        if climb < run_level {
            run_level = climb;
            run_node = p;
        }
        let label = labels[i];
        if label >= n {
            if run_level != i64::MAX {
                out.push_run(run_level, original_label(labels[run_node], n, marks));
            }
            run_level = i64::MAX;
            out.push_mark(label % slots, d, marks);
        } else if d < run_level {
            run_level = d;
            run_node = i;
        }
    }
    if n > 1 && 0 < run_level {
        run_level = 0;
        run_node = 0;
    }
    if run_level != i64::MAX {
        out.push_run(run_level, original_label(labels[run_node], n, marks));
    }
    out
}

fn original_label(label: usize, n: usize, marks: &MarkTables<usize>) -> usize {
    if label >= n {
        marks.original(label % marks.slots())
    } else {
        label
    }
}

/// [`euler_contract`] over any tree navigation, with the (marked) label words
/// supplied separately.
pub fn euler_contract_on<T: RootedTree + ?Sized>(
    tree: &T,
    labels: &[usize],
    queries: usize,
    marks: &MarkTables<usize>,
) -> EulerContraction {
    let n = labels.len();
    let slots = marks.slots();
    let mut out = EulerContraction::with_capacity(queries, 2 * marks.marks_issued() + 1);
    // Shallowest visit of the current run and its original label.
    let mut run: Option<(i64, usize)> = None;
    let mut depth = -1i64;

    let mut visit = |v: usize, depth: i64, first: bool, out: &mut EulerContraction| {
        let label = labels[v];
        if label >= n && first {
            if let Some((level, original)) = run.take() {
                out.push_run(level, original);
            }
            out.push_mark(label % slots, depth, marks);
        } else {
            match run {
                Some((level, _)) if level <= depth => {}
                _ => run = Some((depth, original_label(label, n, marks))),
            }
        }
    };

    walk(tree, |step| match step {
        Step::Enter(v) => {
            depth += 1;
            visit(v, depth, true, &mut out);
        }
        Step::Return { parent, .. } => {
            depth -= 1;
            visit(parent, depth, false, &mut out);
        }
    });
    if let Some((level, original)) = run {
        out.push_run(level, original);
    }
    out
}

fn contracted_lca(
    tree: &mut LabeledTree,
    q: &NodeQueryBatch,
    solve: impl FnOnce(&[i64], &[(usize, usize)]) -> Vec<usize>,
) -> Result<AnswerSet> {
    q.validate(tree.len())?;
    if q.is_empty() {
        return Ok(Vec::new());
    }
    let marks = mark_nodes(tree, q)?;
    let euler = euler_contract(tree, q, &marks);
    euler.restore(tree);
    let positions = solve(&euler.l_q, &euler.ranges());
    Ok(positions.into_iter().map(|p| euler.e_q[p]).collect())
}

/// Euler-tour contraction answered by the doubling sparse-table sweep;
/// `n + O(q log q)` time and `O(q)` extra space.
pub fn st_lca_con(tree: &mut LabeledTree, q: &NodeQueryBatch) -> Result<AnswerSet> {
    contracted_lca(tree, q, doubling_sweep)
}

/// Euler-tour contraction answered by the block RMQ structure; `n + O(q)`
/// time and `O(q)` extra space.
pub fn on_lca_con(tree: &mut LabeledTree, q: &NodeQueryBatch) -> Result<AnswerSet> {
    contracted_lca(tree, q, block_rmq_batch)
}

/// Offline LCA directly on the whole tree; `O(n)` extra space.
pub fn off_lca(tree: &LabeledTree, q: &NodeQueryBatch) -> Result<AnswerSet> {
    offline_lca(tree, q)
}

/// Picks [`off_lca`] once `q >= offline_ratio * n`, [`st_lca_con`] below that.
pub fn lca_batch(tree: &mut LabeledTree, q: &NodeQueryBatch, offline_ratio: f64) -> Result<AnswerSet> {
    if q.len() as f64 >= offline_ratio * tree.len() as f64 {
        off_lca(tree, q)
    } else {
        st_lca_con(tree, q)
    }
}
