//! Timed runs and CSV output.
//!
//! Timing covers the algorithm call only: contraction and restoration are
//! inside it, data generation and file parsing are not.

use std::fmt::Display;
use std::io::Write;
use std::time::Instant;

use rmqbatch::{AnswerSet, LabeledTree, LcaAlgorithm, NodeQueryBatch, QueryBatch, RmqAlgorithm};
use serde::Serialize;

use crate::alloc;
use crate::error::{BenchError, Result};
use crate::gen::{gen_array, gen_node_queries, gen_queries, gen_tree};

/// Default repetitions per cell.
pub const DEFAULT_REPETITIONS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig<A> {
    pub n: usize,
    pub q_schedule: Vec<usize>,
    pub seed: u64,
    pub algorithms: Vec<A>,
    pub repetitions: usize,
}

/// `ceil(sqrt(n)) * 2^i` for `i = 0..8`, capped at the number of distinct
/// ranges `n(n+1)/2`.
pub fn default_q_schedule(n: usize) -> Vec<usize> {
    let root = (n as f64).sqrt().ceil() as usize;
    let distinct = n.saturating_mul(n + 1) / 2;
    let mut out: Vec<usize> = (0..8).map(|i| (root << i).min(distinct)).collect();
    out.dedup();
    out
}

impl<A> BenchConfig<A> {
    pub fn new(n: usize, seed: u64, algorithms: Vec<A>) -> Self {
        BenchConfig {
            n,
            q_schedule: default_q_schedule(n),
            seed,
            algorithms,
            repetitions: DEFAULT_REPETITIONS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(BenchError::Config("n must be positive".into()));
        }
        if self.repetitions == 0 {
            return Err(BenchError::Config("repetitions must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(BenchError::Config("no algorithms selected".into()));
        }
        let distinct = self.n.saturating_mul(self.n + 1) / 2;
        if let Some(&q) = self.q_schedule.iter().find(|&&q| q > distinct) {
            return Err(BenchError::Config(format!(
                "q = {q} exceeds the {distinct} distinct ranges of n = {}",
                self.n
            )));
        }
        Ok(())
    }
}

/// One timed repetition of one algorithm on one input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub algo: String,
    pub n: usize,
    pub q: usize,
    pub seed: u64,
    pub rep: usize,
    pub elapsed_ns: u64,
    /// Peak heap words held by the call, when a tracking allocator is installed.
    pub peak_aux_words: Option<usize>,
    pub checksum: u64,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    algo: &'a str,
    n: usize,
    q: usize,
    seed: u64,
    rep: usize,
    elapsed_ns: u64,
}

/// FNV-1a over the answer words.
pub fn checksum(answers: &[usize]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &a in answers {
        for byte in (a as u64).to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

fn array_fingerprint(a: &[i64]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &v in a {
        h = (h ^ v as u64).wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn timed(run: impl FnOnce() -> rmqbatch::Result<AnswerSet>) -> Result<(AnswerSet, u64, Option<usize>)> {
    let ((answers, elapsed), peak) = alloc::measure(|| {
        let start = Instant::now();
        let answers = run();
        (answers, start.elapsed().as_nanos() as u64)
    });
    let words = alloc::is_active().then_some(peak / std::mem::size_of::<usize>());
    Ok((answers?, elapsed, words))
}

fn check_agreement(records: &[BenchRecord]) -> Result<()> {
    if let Some(first) = records.first() {
        if let Some(other) = records.iter().find(|r| r.checksum != first.checksum) {
            return Err(BenchError::Mismatch {
                n: first.n,
                q: first.q,
                first: first.algo.clone(),
                first_sum: first.checksum,
                second: other.algo.clone(),
                second_sum: other.checksum,
            });
        }
    }
    Ok(())
}

/// Times every algorithm on one array and batch; fails if any two
/// algorithms disagree or an input is not restored.
pub fn time_rmq_cell(
    a: &mut [i64],
    q: &QueryBatch,
    algorithms: &[RmqAlgorithm],
    repetitions: usize,
    seed: u64,
) -> Result<Vec<BenchRecord>> {
    q.validate(a.len())?;
    let before = array_fingerprint(a);
    let mut records = Vec::with_capacity(algorithms.len() * repetitions);
    for &algo in algorithms {
        for rep in 0..repetitions {
            let (answers, elapsed_ns, peak_aux_words) = timed(|| algo.run(a, q))?;
            records.push(BenchRecord {
                algo: algo.name().to_string(),
                n: a.len(),
                q: q.len(),
                seed,
                rep,
                elapsed_ns,
                peak_aux_words,
                checksum: checksum(&answers),
            });
        }
        if array_fingerprint(a) != before {
            return Err(BenchError::InputNotRestored { algo: algo.name().to_string() });
        }
    }
    check_agreement(&records)?;
    Ok(records)
}

/// Times every LCA algorithm on one tree and batch.
pub fn time_lca_cell(
    tree: &mut LabeledTree,
    q: &NodeQueryBatch,
    algorithms: &[LcaAlgorithm],
    repetitions: usize,
    seed: u64,
) -> Result<Vec<BenchRecord>> {
    q.validate(tree.len())?;
    let mut records = Vec::with_capacity(algorithms.len() * repetitions);
    for &algo in algorithms {
        for rep in 0..repetitions {
            let (answers, elapsed_ns, peak_aux_words) = timed(|| algo.run(tree, q))?;
            records.push(BenchRecord {
                algo: algo.name().to_string(),
                n: tree.len(),
                q: q.len(),
                seed,
                rep,
                elapsed_ns,
                peak_aux_words,
                checksum: checksum(&answers),
            });
        }
        if tree.labels().iter().enumerate().any(|(v, &l)| v != l) {
            return Err(BenchError::InputNotRestored { algo: algo.name().to_string() });
        }
    }
    check_agreement(&records)?;
    Ok(records)
}

fn batch_seed(seed: u64, cell: usize) -> u64 {
    seed.wrapping_add(cell as u64)
}

/// Random array of length `n` against every batch size of the schedule.
pub fn run_rmq(cfg: &BenchConfig<RmqAlgorithm>) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    let mut a = gen_array(cfg.n, cfg.seed)?;
    let mut records = Vec::new();
    for (cell, &q) in cfg.q_schedule.iter().enumerate() {
        let batch = gen_queries(cfg.n, q, batch_seed(cfg.seed, cell))?;
        records.extend(time_rmq_cell(&mut a, &batch, &cfg.algorithms, cfg.repetitions, cfg.seed)?);
    }
    Ok(records)
}

/// Cartesian tree of a random array of length `n` against every batch size.
pub fn run_lca(cfg: &BenchConfig<LcaAlgorithm>) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    let mut tree = gen_tree(cfg.n, cfg.seed)?;
    let mut records = Vec::new();
    for (cell, &q) in cfg.q_schedule.iter().enumerate() {
        let batch = gen_node_queries(cfg.n, q, batch_seed(cfg.seed, cell))?;
        records.extend(time_lca_cell(&mut tree, &batch, &cfg.algorithms, cfg.repetitions, cfg.seed)?);
    }
    Ok(records)
}

/// Header `algo,n,q,seed,rep,elapsed_ns`, one row per record.
pub fn write_csv<W: Write>(w: W, records: &[BenchRecord]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in records {
        out.serialize(CsvRow {
            algo: &r.algo,
            n: r.n,
            q: r.q,
            seed: r.seed,
            rep: r.rep,
            elapsed_ns: r.elapsed_ns,
        })?;
    }
    if records.is_empty() {
        out.write_record(["algo", "n", "q", "seed", "rep", "elapsed_ns"])?;
    }
    out.flush()?;
    Ok(())
}

/// Median time of one `(algorithm, q)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub algo: String,
    pub n: usize,
    pub q: usize,
    pub median_ns: u64,
    pub peak_aux_words: Option<usize>,
}

pub fn median(mut xs: Vec<u64>) -> u64 {
    assert!(!xs.is_empty());
    xs.sort_unstable();
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2
    }
}

/// Groups records by `(algo, n, q)` in first-seen order.
pub fn summarize(records: &[BenchRecord]) -> Vec<CellSummary> {
    let mut keys: Vec<(&str, usize, usize)> = Vec::new();
    for r in records {
        let key = (r.algo.as_str(), r.n, r.q);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(algo, n, q)| {
            let cell: Vec<&BenchRecord> =
                records.iter().filter(|r| r.algo == algo && r.n == n && r.q == q).collect();
            CellSummary {
                algo: algo.to_string(),
                n,
                q,
                median_ns: median(cell.iter().map(|r| r.elapsed_ns).collect()),
                peak_aux_words: cell.iter().filter_map(|r| r.peak_aux_words).max(),
            }
        })
        .collect()
}

/// Parses a comma-separated algorithm list.
pub fn parse_algorithms<A>(list: &str) -> Result<Vec<A>>
where
    A: std::str::FromStr,
    A::Err: Display,
{
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<A>().map_err(|e| BenchError::Config(e.to_string())))
        .collect()
}
