//! Randomized cross-checks of every variant against the brute-force scan
//! and a naive parent-walk LCA.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rmqbatch::lca_batch::{euler_contract, mark_nodes};
use rmqbatch::{
    bf_rmq, contract, LabeledTree, LcaAlgorithm, NodeQueryBatch, QueryBatch, RmqAlgorithm,
    RootedTree,
};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub max_q: usize,
    pub seeds: u64,
    pub first_seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_n: 4096, max_q: 128, seeds: 100, first_seed: 0 }
    }
}

/// A single disagreement, with enough context to replay it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub seed: u64,
    pub algo: String,
    pub n: usize,
    pub q: usize,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "seed {} {} (n={}, q={}): {}", self.seed, self.algo, self.n, self.q, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub arrays: usize,
    pub trees: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random array whose value range is picked per instance, from two
/// distinct values up to the full 31-bit range, so duplicate-heavy inputs
/// are common.
pub fn random_array(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    let spread: i64 = match rng.gen_range(0..4) {
        0 => 2,
        1 => 16,
        2 => (n as i64 / 4).max(2),
        _ => 1 << 31,
    };
    let offset = if rng.gen_bool(0.25) { -spread / 2 } else { 0 };
    (0..n).map(|_| offset + rng.gen_range(0..spread)).collect()
}

pub fn random_ranges(rng: &mut ChaCha8Rng, n: usize, q: usize) -> Vec<(usize, usize)> {
    (0..q)
        .map(|_| {
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            (x.min(y), x.max(y))
        })
        .collect()
}

/// Random recursive tree with shuffled node ids; node 0 is not always the root.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> LabeledTree {
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let mut parents = vec![None; n];
    for k in 1..n {
        // Occasionally build a long path to exercise deep trees.
        let p = if rng.gen_bool(0.1) { k - 1 } else { rng.gen_range(0..k) };
        parents[ids[k]] = Some(ids[p]);
    }
    LabeledTree::from_parents(&parents).expect("valid random tree")
}

/// LCA by walking parent pointers.
pub fn naive_lca(t: &LabeledTree, mut u: usize, mut v: usize) -> usize {
    let (mut du, mut dv) = (t.depth(u), t.depth(v));
    while du > dv {
        u = t.parent(u).unwrap();
        du -= 1;
    }
    while dv > du {
        v = t.parent(v).unwrap();
        dv -= 1;
    }
    while u != v {
        u = t.parent(u).unwrap();
        v = t.parent(v).unwrap();
    }
    u
}

/// Checks one array and batch against every RMQ variant; returns the
/// number of checks performed.
pub fn check_rmq_instance(
    seed: u64,
    a: &[i64],
    pairs: &[(usize, usize)],
    failures: &mut Vec<Failure>,
) -> Result<usize> {
    let (n, q) = (a.len(), pairs.len());
    let batch = QueryBatch::new(pairs.to_vec());
    let expected = bf_rmq(a, &batch)?;
    let mut fail = |algo: &str, detail: String| {
        failures.push(Failure { seed, algo: algo.to_string(), n, q, detail })
    };
    let mut checks = 0;
    for algo in RmqAlgorithm::ALL {
        let mut b = a.to_vec();
        match algo.run(&mut b, &batch) {
            Ok(got) => {
                if let Some(t) = (0..q).find(|&t| got.get(t) != expected.get(t)) {
                    fail(algo.name(), format!("query {} {:?}: got {:?}, want {}", t, pairs[t], got.get(t), expected[t]));
                } else if got.len() != q {
                    fail(algo.name(), format!("{} answers for {} queries", got.len(), q));
                }
            }
            Err(e) => fail(algo.name(), e.to_string()),
        }
        if b != a {
            fail(algo.name(), "array not restored".into());
        }
        checks += 1;
    }
    if q > 0 {
        let mut b = a.to_vec();
        let c = contract(&mut b, &batch, None)?;
        if c.len() > n.min(4 * q + 1) {
            fail("contract", format!("n_q = {} exceeds min(n, 4q+1)", c.len()));
        }
        c.restore(&mut b);
        if b != a {
            fail("contract", "restore is not bit-exact".into());
        }
        checks += 1;
    }
    Ok(checks)
}

/// Checks one tree and batch against every LCA variant.
pub fn check_lca_instance(
    seed: u64,
    tree: &LabeledTree,
    pairs: &[(usize, usize)],
    failures: &mut Vec<Failure>,
) -> Result<usize> {
    let (n, q) = (tree.len(), pairs.len());
    let batch = NodeQueryBatch::new(pairs.to_vec());
    let expected: Vec<usize> = pairs.iter().map(|&(u, v)| naive_lca(tree, u, v)).collect();
    let mut fail = |algo: &str, detail: String| {
        failures.push(Failure { seed, algo: algo.to_string(), n, q, detail })
    };
    let mut checks = 0;
    for algo in LcaAlgorithm::ALL {
        let mut t = tree.clone();
        match algo.run(&mut t, &batch) {
            Ok(got) if got != expected => {
                let k = (0..q).find(|&k| got.get(k) != expected.get(k)).unwrap_or(q);
                fail(algo.name(), format!("query {k}: got {:?}, want {:?}", got.get(k), expected.get(k)));
            }
            Ok(_) => {}
            Err(e) => fail(algo.name(), e.to_string()),
        }
        if &t != tree {
            fail(algo.name(), "tree labels not restored".into());
        }
        checks += 1;
    }
    if q > 0 {
        let mut t = tree.clone();
        let marks = mark_nodes(&mut t, &batch)?;
        let euler = euler_contract(&t, &batch, &marks);
        if euler.len() > 4 * q + 1 {
            fail("euler-contract", format!("|e_q| = {} exceeds 4q+1", euler.len()));
        }
        euler.restore(&mut t);
        if &t != tree {
            fail("euler-contract", "restore is not exact".into());
        }
        checks += 1;
    }
    Ok(checks)
}

/// One array instance and one tree instance per seed.
pub fn verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for seed in cfg.first_seed..cfg.first_seed + cfg.seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        let n = rng.gen_range(1..=cfg.max_n.max(1));
        let q = rng.gen_range(1..=cfg.max_q.max(1));
        let a = random_array(&mut rng, n);
        let pairs = random_ranges(&mut rng, n, q);
        report.checks += check_rmq_instance(seed, &a, &pairs, &mut report.failures)?;
        report.arrays += 1;

        let n = rng.gen_range(1..=cfg.max_n.max(1));
        let q = rng.gen_range(1..=cfg.max_q.max(1));
        let tree = random_tree(&mut rng, n);
        let pairs: Vec<(usize, usize)> =
            (0..q).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        report.checks += check_lca_instance(seed, &tree, &pairs, &mut report.failures)?;
        report.trees += 1;
    }
    Ok(report)
}
