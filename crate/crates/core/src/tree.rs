//! Rooted trees with constant-time navigation and a stackless depth-first walk.

use crate::error::{Error, Result};

pub(crate) const NONE: u32 = u32::MAX;

#[inline]
fn opt(v: u32) -> Option<usize> {
    (v != NONE).then_some(v as usize)
}

/// Navigation used by the traversals. Nodes are `0..node_count()`.
pub trait RootedTree {
    fn node_count(&self) -> usize;
    fn root(&self) -> usize;
    fn parent(&self, v: usize) -> Option<usize>;
    fn first_child(&self, v: usize) -> Option<usize>;
    fn next_sibling(&self, v: usize) -> Option<usize>;
}

/// One step of a depth-first walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// First arrival at `v` (the root, or by descending an edge).
    Enter(usize),
    /// `child` is finished; the walk is back at `parent`.
    Return { parent: usize, child: usize },
}

/// Depth-first walk without an explicit stack. Emits the Euler tour as a
/// sequence of steps: every tree edge is descended once and ascended once.
pub fn walk<T: RootedTree + ?Sized>(tree: &T, mut visit: impl FnMut(Step)) {
    if tree.node_count() == 0 {
        return;
    }
    let root = tree.root();
    visit(Step::Enter(root));
    let mut v = root;
    loop {
        if let Some(c) = tree.first_child(v) {
            visit(Step::Enter(c));
            v = c;
            continue;
        }
        loop {
            if v == root {
                return;
            }
            let p = tree.parent(v).expect("non-root node without parent");
            let sibling = tree.next_sibling(v);
            visit(Step::Return { parent: p, child: v });
            if let Some(s) = sibling {
                visit(Step::Enter(s));
                v = s;
                break;
            }
            v = p;
        }
    }
}

/// A rooted tree over nodes `0..n` stored as parent, first-child and
/// next-sibling arrays, plus one rewritable word per node.
///
/// A node is addressed by its index, which is also its label while the tree is
/// unmarked. The batched LCA algorithms temporarily overwrite labels of query
/// nodes and put them back before returning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    root: u32,
    parent: Vec<u32>,
    first_child: Vec<u32>,
    next_sibling: Vec<u32>,
    depth: Vec<u32>,
    /// Whether node ids are the depth-first visiting order.
    preorder: bool,
    labels: Vec<usize>,
}

impl LabeledTree {
    /// Builds a tree from one parent entry per node; exactly one entry must be
    /// `None`. Children keep ascending index order.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        let n = parents.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if n >= NONE as usize {
            return Err(Error::TooLarge(n));
        }
        let mut root = None;
        let mut parent = vec![NONE; n];
        for (v, p) in parents.iter().enumerate() {
            match *p {
                None if root.is_some() => {
                    return Err(Error::MalformedTree(format!(
                        "nodes {} and {v} both lack a parent",
                        root.unwrap()
                    )))
                }
                None => root = Some(v),
                Some(p) if p >= n => {
                    return Err(Error::MalformedTree(format!(
                        "node {v} has parent {p} outside 0..{n}"
                    )))
                }
                Some(p) if p == v => {
                    return Err(Error::MalformedTree(format!("node {v} is its own parent")))
                }
                Some(p) => parent[v] = p as u32,
            }
        }
        let root = root.ok_or_else(|| Error::MalformedTree("no root".into()))?;

        let mut first_child = vec![NONE; n];
        let mut next_sibling = vec![NONE; n];
        for v in (0..n).rev() {
            let p = parent[v];
            if p != NONE {
                next_sibling[v] = first_child[p as usize];
                first_child[p as usize] = v as u32;
            }
        }
        let mut tree = LabeledTree {
            root: root as u32,
            parent,
            first_child,
            next_sibling,
            depth: Vec::new(),
            preorder: false,
            labels: (0..n).collect(),
        };
        let mut depth = vec![0u32; n];
        let mut reached = 0usize;
        let mut preorder = true;
        let mut d = 0u32;
        walk(&tree, |s| match s {
            Step::Enter(v) => {
                preorder &= v == reached;
                depth[v] = d;
                d += 1;
                reached += 1;
            }
            Step::Return { .. } => d -= 1,
        });
        tree.depth = depth;
        tree.preorder = preorder;
        if reached != n {
            return Err(Error::MalformedTree(format!(
                "{} of {n} nodes are not reachable from root {root}",
                n - reached
            )));
        }
        Ok(tree)
    }

    /// Builds a tree rooted at node 0 from `(child, parent)` edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if edges.len() != n - 1 {
            return Err(Error::MalformedTree(format!(
                "{} edges for {n} nodes",
                edges.len()
            )));
        }
        let mut parents = vec![None; n];
        for &(c, p) in edges {
            if c == 0 || c >= n {
                return Err(Error::MalformedTree(format!("invalid child {c}")));
            }
            if parents[c].replace(p).is_some() {
                return Err(Error::MalformedTree(format!("node {c} has two parents")));
            }
        }
        Self::from_parents(&parents)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    #[inline]
    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    #[inline]
    pub(crate) fn set_label(&mut self, v: usize, label: usize) {
        self.labels[v] = label;
    }

    /// True when the root is node 0 and every subtree occupies a contiguous
    /// id range, children in ascending order: ids are the preorder.
    pub fn is_preorder(&self) -> bool {
        self.preorder
    }

    /// Parent and depth arrays, `u32::MAX` for the root's parent.
    pub(crate) fn parents_and_depths(&self) -> (&[u32], &[u32]) {
        (&self.parent, &self.depth)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let mut cur = self.first_child[v];
        std::iter::from_fn(move || {
            let c = opt(cur)?;
            cur = self.next_sibling[c];
            Some(c)
        })
    }

    /// Number of edges between `v` and the root.
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v] as usize
    }
}

impl RootedTree for LabeledTree {
    fn node_count(&self) -> usize {
        self.parent.len()
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
        opt(self.first_child[v])
    }

    #[inline]
    fn next_sibling(&self, v: usize) -> Option<usize> {
        opt(self.next_sibling[v])
    }
}
