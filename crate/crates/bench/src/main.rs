use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rmqbatch::{LcaAlgorithm, NodeQueryBatch, QueryBatch, RmqAlgorithm, SuffixLcp};
use rmqbatch_bench::alloc::TrackingAllocator;
use rmqbatch_bench::gen::{self, DEFAULT_SEED, GENERATOR_ID};
use rmqbatch_bench::io as files;
use rmqbatch_bench::runner::{self, BenchConfig, BenchRecord, DEFAULT_REPETITIONS};
use rmqbatch_bench::verify::{self, VerifyConfig};

#[global_allocator]
static ALLOC: TrackingAllocator = TrackingAllocator;

/// Small-batch range-minimum and lowest-common-ancestor queries.
#[derive(Parser)]
#[command(name = "rmqbatch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SeedArg {
    /// Generator seed.
    #[arg(long, env = "RMQBATCH_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random array of 31-bit values.
    GenArray {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        out: PathBuf,
        /// One decimal value per line instead of little-endian i64 words.
        #[arg(long)]
        text: bool,
    },
    /// Write uniformly random ranges over 0..n, one `i j` pair per line.
    GenQueries {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a random Cartesian tree rooted at node 0.
    GenTree {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time RMQ algorithms on an array and query file.
    Run {
        /// Comma-separated: bf, bf-con, st, st-con, on, on-con, off, off-con.
        #[arg(long, default_value = "st,st-con,on,on-con")]
        algos: String,
        #[arg(long)]
        array: PathBuf,
        #[arg(long)]
        text: bool,
        #[arg(long)]
        queries: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_REPETITIONS)]
        reps: usize,
        /// Print the answers of the first algorithm, one per line.
        #[arg(long)]
        answers: bool,
    },
    /// Time LCA algorithms on a tree and query file.
    RunLca {
        /// Comma-separated: off, st-con, on-con.
        #[arg(long, default_value = "off,st-con,on-con")]
        algos: String,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        queries: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_REPETITIONS)]
        reps: usize,
        #[arg(long)]
        answers: bool,
    },
    /// Generated array, default q schedule ceil(sqrt(n)) * 2^i for i < 8.
    BenchRmq(BenchArgs),
    /// Generated tree, default q schedule ceil(sqrt(n)) * 2^i for i < 8.
    BenchLca(BenchArgs),
    /// Cross-check every variant against brute force on random instances.
    Verify {
        #[arg(long, default_value_t = 4096)]
        max_n: usize,
        #[arg(long, default_value_t = 128)]
        max_q: usize,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        first_seed: u64,
    },
    /// Longest common extension of suffix pairs of a text file.
    Lce {
        #[arg(long)]
        text: PathBuf,
        /// One `i j` suffix pair per line.
        #[arg(long)]
        queries: PathBuf,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated batch sizes; defaults to the doubling schedule.
    #[arg(long, value_delimiter = ',')]
    q: Vec<usize>,
    #[arg(long)]
    algos: Option<String>,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, default_value_t = DEFAULT_REPETITIONS)]
    reps: usize,
    #[arg(long)]
    csv: Option<PathBuf>,
}

impl BenchArgs {
    fn config<A>(&self, default_algos: &[A]) -> anyhow::Result<BenchConfig<A>>
    where
        A: Clone + std::str::FromStr,
        A::Err: std::fmt::Display,
    {
        let algos = match &self.algos {
            Some(list) => runner::parse_algorithms(list)?,
            None => default_algos.to_vec(),
        };
        let mut cfg = BenchConfig::new(self.n, self.seed.seed, algos);
        if !self.q.is_empty() {
            cfg.q_schedule = self.q.clone();
        }
        cfg.repetitions = self.reps;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(records: &[BenchRecord], csv: Option<&Path>) -> anyhow::Result<()> {
    match csv {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            runner::write_csv(BufWriter::new(f), records)?;
        }
        None => runner::write_csv(io::stdout().lock(), records)?,
    }
    let mut err = io::stderr().lock();
    for s in runner::summarize(records) {
        let words = s.peak_aux_words.map_or_else(|| "-".to_string(), |w| w.to_string());
        writeln!(err, "{:<8} n={:<10} q={:<8} median {:>12} ns  peak aux {} words", s.algo, s.n, s.q, s.median_ns, words)?;
    }
    Ok(())
}

fn print_answers(answers: &[usize]) -> anyhow::Result<()> {
    let mut out = BufWriter::new(io::stdout().lock());
    for a in answers {
        writeln!(out, "{a}")?;
    }
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::GenArray { n, seed, out, text } => {
            files::save_array(&out, &gen::gen_array(n, seed.seed)?, text)?;
            eprintln!("generator {GENERATOR_ID}, seed {}", seed.seed);
        }
        Command::GenQueries { n, q, seed, out } => {
            files::save_pairs(&out, gen::gen_queries(n, q, seed.seed)?.pairs())?;
            eprintln!("generator {GENERATOR_ID}, seed {}", seed.seed);
        }
        Command::GenTree { n, seed, out } => {
            files::save_tree(&out, &gen::gen_tree(n, seed.seed)?)?;
            eprintln!("generator {GENERATOR_ID}, seed {}", seed.seed);
        }
        Command::Run { algos, array, text, queries, csv, reps, answers } => {
            let algos: Vec<RmqAlgorithm> = runner::parse_algorithms(&algos)?;
            if algos.is_empty() || reps == 0 {
                bail!("need at least one algorithm and one repetition");
            }
            let mut a = files::load_array(&array, text)?;
            let batch = QueryBatch::new(files::load_pairs(&queries)?);
            let records = runner::time_rmq_cell(&mut a, &batch, &algos, reps, 0)?;
            if answers {
                print_answers(&algos[0].run(&mut a, &batch)?)?;
                if let Some(path) = &csv {
                    emit(&records, Some(path))?;
                }
            } else {
                emit(&records, csv.as_deref())?;
            }
        }
        Command::RunLca { algos, tree, queries, csv, reps, answers } => {
            let algos: Vec<LcaAlgorithm> = runner::parse_algorithms(&algos)?;
            if algos.is_empty() || reps == 0 {
                bail!("need at least one algorithm and one repetition");
            }
            let mut t = files::load_tree(&tree)?;
            let batch = NodeQueryBatch::new(files::load_pairs(&queries)?);
            let records = runner::time_lca_cell(&mut t, &batch, &algos, reps, 0)?;
            if answers {
                print_answers(&algos[0].run(&mut t, &batch)?)?;
                if let Some(path) = &csv {
                    emit(&records, Some(path))?;
                }
            } else {
                emit(&records, csv.as_deref())?;
            }
        }
        Command::BenchRmq(args) => {
            // Brute force is quadratic in practice; only on request.
            let defaults: Vec<_> = RmqAlgorithm::ALL
                .into_iter()
                .filter(|a| !matches!(a, RmqAlgorithm::Bf | RmqAlgorithm::BfCon))
                .collect();
            let cfg = args.config(&defaults)?;
            eprintln!("generator {GENERATOR_ID}, seed {}", cfg.seed);
            emit(&runner::run_rmq(&cfg)?, args.csv.as_deref())?;
        }
        Command::BenchLca(args) => {
            let cfg = args.config(&LcaAlgorithm::ALL)?;
            eprintln!("generator {GENERATOR_ID}, seed {}", cfg.seed);
            emit(&runner::run_lca(&cfg)?, args.csv.as_deref())?;
        }
        Command::Verify { max_n, max_q, seeds, first_seed } => {
            let report = verify::verify(&VerifyConfig { max_n, max_q, seeds, first_seed })?;
            for f in &report.failures {
                println!("FAIL {f}");
            }
            println!(
                "{} arrays, {} trees, {} checks, {} failures",
                report.arrays,
                report.trees,
                report.checks,
                report.failures.len()
            );
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Lce { text, queries } => {
            let text = files::load_text(&text)?;
            let index = SuffixLcp::build(&text)?;
            print_answers(&index.lce_batch(&files::load_pairs(&queries)?)?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            // Unknown algorithm names are usage errors, like bad flags.
            if matches!(e.downcast_ref(), Some(rmqbatch_bench::BenchError::Config(_))) {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
