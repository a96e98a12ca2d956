//! Benchmark harness, file formats and randomized verification for
//! `rmqbatch`.

pub mod alloc;
pub mod error;
pub mod gen;
pub mod io;
pub mod runner;
pub mod verify;

pub use error::{BenchError, Result};
