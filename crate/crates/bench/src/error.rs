use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Core(#[from] rmqbatch::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("answer checksums differ for n={n}, q={q}: {first} gives {first_sum:#018x}, {second} gives {second_sum:#018x}")]
    Mismatch {
        n: usize,
        q: usize,
        first: String,
        first_sum: u64,
        second: String,
        second_sum: u64,
    },

    #[error("{algo} left its input modified")]
    InputNotRestored { algo: String },
}

pub type Result<T> = std::result::Result<T, BenchError>;
