use proptest::prelude::*;
use rmqbatch::brute_force::scan_argmin;
use rmqbatch::lca_batch::{euler_contract, mark_nodes};
use rmqbatch::{
    bf_rmq, contract, LabeledTree, LcaAlgorithm, NodeQueryBatch, QueryBatch, RmqAlgorithm,
    RootedTree,
};

fn array_and_batch() -> impl Strategy<Value = (Vec<i64>, Vec<(usize, usize)>)> {
    (1usize..200, 0i64..8).prop_flat_map(|(n, spread)| {
        let values = prop::collection::vec(-spread..=spread, n);
        let pairs = prop::collection::vec((0..n, 0..n), 0..24)
            .prop_map(|raw| raw.into_iter().map(|(x, y)| (x.min(y), x.max(y))).collect());
        (values, pairs)
    })
}

fn tree_and_batch() -> impl Strategy<Value = (Vec<Option<usize>>, Vec<(usize, usize)>)> {
    (1usize..150).prop_flat_map(|n| {
        // Half the trees are numbered in preorder: each node hangs off the
        // path from the root to its predecessor.
        let parents = (prop::collection::vec(any::<prop::sample::Index>(), n), any::<bool>())
            .prop_map(move |(idx, preorder)| {
                let mut path = vec![0usize];
                idx.iter()
                    .enumerate()
                    .map(|(v, ix)| match v {
                        0 => None,
                        _ if preorder => {
                            path.truncate(ix.index(path.len()) + 1);
                            let p = *path.last().unwrap();
                            path.push(v);
                            Some(p)
                        }
                        _ => Some(ix.index(v)),
                    })
                    .collect::<Vec<_>>()
            });
        let pairs = prop::collection::vec((0..n, 0..n), 0..20);
        (parents, pairs)
    })
}

fn naive_lca(t: &LabeledTree, mut u: usize, mut v: usize) -> usize {
    while t.depth(u) > t.depth(v) {
        u = t.parent(u).unwrap();
    }
    while t.depth(v) > t.depth(u) {
        v = t.parent(v).unwrap();
    }
    while u != v {
        u = t.parent(u).unwrap();
        v = t.parent(v).unwrap();
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn every_rmq_variant_equals_the_scan((a, pairs) in array_and_batch()) {
        let q = QueryBatch::new(pairs);
        let expected = bf_rmq(&a, &q).unwrap();
        for (t, &(i, j)) in q.pairs().iter().enumerate() {
            let p = expected[t];
            prop_assert!(i <= p && p <= j);
            prop_assert!((i..p).all(|k| a[k] > a[p]));
        }
        for algo in RmqAlgorithm::ALL {
            let mut b = a.clone();
            prop_assert_eq!(&algo.run(&mut b, &q).unwrap(), &expected, "{}", algo);
            prop_assert_eq!(&b, &a);
        }
    }

    #[test]
    fn contraction_invariants((a, pairs) in array_and_batch()) {
        prop_assume!(!pairs.is_empty());
        let q = QueryBatch::new(pairs);
        let mut b = a.clone();
        let c = contract(&mut b, &q, None).unwrap();
        let n_q = c.len();
        prop_assert!(n_q <= a.len().min(4 * q.len() + 1));
        let f = c.positions();
        prop_assert!(f.windows(2).all(|w| w[0] < w[1]));
        for p in 0..n_q {
            prop_assert_eq!(c.values()[p], a[f[p]]);
        }
        let mut marked: Vec<usize> = q.iter().flat_map(|(i, j)| [i, j]).collect();
        marked.sort_unstable();
        marked.dedup();
        prop_assert_eq!(c.marked_positions().collect::<Vec<_>>(), marked);
        for (&(i, j), &(ip, jp)) in q.pairs().iter().zip(c.remapped()) {
            prop_assert_eq!(f[ip], i);
            prop_assert_eq!(f[jp], j);
            let local = scan_argmin(c.values(), ip, jp);
            prop_assert_eq!(f[local], scan_argmin(&a, i, j));
        }
        c.restore(&mut b);
        prop_assert_eq!(b, a);
    }

    #[test]
    fn every_lca_variant_equals_the_parent_walk((parents, pairs) in tree_and_batch()) {
        let original = LabeledTree::from_parents(&parents).unwrap();
        let q = NodeQueryBatch::new(pairs);
        let expected: Vec<_> = q.pairs().iter().map(|&(u, v)| naive_lca(&original, u, v)).collect();
        for algo in LcaAlgorithm::ALL {
            let mut t = original.clone();
            prop_assert_eq!(&algo.run(&mut t, &q).unwrap(), &expected, "{}", algo);
            prop_assert_eq!(&t, &original);
        }
    }

    #[test]
    fn euler_contraction_invariants((parents, pairs) in tree_and_batch()) {
        prop_assume!(!pairs.is_empty());
        let original = LabeledTree::from_parents(&parents).unwrap();
        let mut t = original.clone();
        let q = NodeQueryBatch::new(pairs);
        let marks = mark_nodes(&mut t, &q).unwrap();
        let e = euler_contract(&t, &q, &marks);
        e.restore(&mut t);
        prop_assert_eq!(&t, &original);
        prop_assert!(e.len() <= 4 * q.len() + 1);
        prop_assert_eq!(e.labels().len(), e.levels().len());
        for p in 0..e.len() {
            prop_assert_eq!(e.levels()[p], t.depth(e.labels()[p]) as i64);
        }
        for (&(u, v), &(pu, pv)) in q.pairs().iter().zip(e.remapped()) {
            prop_assert!(e.is_mark(pu) && e.is_mark(pv));
            prop_assert_eq!(e.labels()[pu], u);
            prop_assert_eq!(e.labels()[pv], v);
            // The shallowest entry between the endpoints is an ancestor of both,
            // and no deeper common ancestor exists.
            let (lo, hi) = (pu.min(pv), pu.max(pv));
            let lca = e.labels()[scan_argmin(e.levels(), lo, hi)];
            prop_assert_eq!(lca, naive_lca(&t, u, v));
        }
    }
}
