//! File formats.
//!
//! * Arrays: little-endian 64-bit signed integers, or one decimal value per
//!   line in text mode.
//! * Queries: one `i j` pair per line.
//! * Trees: the node count `n` on the first line, then `n - 1` lines
//!   `child parent`. Node 0 is the root.
//!
//! Blank lines and lines starting with `#` are skipped in every text format.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use rmqbatch::{LabeledTree, RootedTree};

use crate::error::{BenchError, Result};

fn parse_err(path: &str, line: usize, message: impl Into<String>) -> BenchError {
    BenchError::Parse { path: path.to_string(), line, message: message.into() }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines<R: BufRead>(r: R) -> impl Iterator<Item = std::io::Result<(usize, String)>> {
    r.lines().enumerate().filter_map(|(k, line)| match line {
        Ok(l) => {
            let t = l.trim();
            (!t.is_empty() && !t.starts_with('#')).then(|| Ok((k + 1, t.to_string())))
        }
        Err(e) => Some(Err(e)),
    })
}

fn parse_pair(name: &str, line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| parse_err(name, line, "expected two integers"))?
            .parse()
            .map_err(|e| parse_err(name, line, format!("{e}")))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(parse_err(name, line, "expected two integers"));
    }
    Ok(pair)
}

pub fn write_array<W: Write>(mut w: W, values: &[i64], text: bool) -> Result<()> {
    if text {
        for v in values {
            writeln!(w, "{v}")?;
        }
    } else {
        for v in values {
            w.write_all(&v.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_array<R: Read>(mut r: R, name: &str, text: bool) -> Result<Vec<i64>> {
    if text {
        let mut out = Vec::new();
        for line in content_lines(BufReader::new(r)) {
            let (k, l) = line?;
            out.push(l.parse().map_err(|e| parse_err(name, k, format!("{e}")))?);
        }
        return Ok(out);
    }
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() % 8 != 0 {
        return Err(parse_err(name, 0, format!("{} bytes is not a whole number of 64-bit words", bytes.len())));
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| i64::from_le_bytes(c.try_into().unwrap()))
        .collect())
}

pub fn write_pairs<W: Write>(mut w: W, pairs: &[(usize, usize)]) -> Result<()> {
    for (i, j) in pairs {
        writeln!(w, "{i} {j}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_pairs<R: Read>(r: R, name: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for line in content_lines(BufReader::new(r)) {
        let (k, l) = line?;
        out.push(parse_pair(name, k, &l)?);
    }
    Ok(out)
}

/// Writes a tree rooted at node 0.
pub fn write_tree<W: Write>(mut w: W, tree: &LabeledTree) -> Result<()> {
    if tree.root() != 0 {
        return Err(BenchError::Config(format!("tree is rooted at {}, not 0", tree.root())));
    }
    writeln!(w, "{}", tree.len())?;
    for v in 1..tree.len() {
        writeln!(w, "{v} {}", tree.parent(v).expect("non-root node"))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_tree<R: Read>(r: R, name: &str) -> Result<LabeledTree> {
    let mut lines = content_lines(BufReader::new(r));
    let (k, first) = lines.next().ok_or_else(|| parse_err(name, 1, "missing node count"))??;
    let n: usize = first.parse().map_err(|e| parse_err(name, k, format!("{e}")))?;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for line in lines {
        let (k, l) = line?;
        edges.push(parse_pair(name, k, &l)?);
    }
    Ok(LabeledTree::from_edges(n, &edges)?)
}

fn open(path: &Path) -> Result<File> {
    Ok(File::open(path)?)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

pub fn load_array(path: &Path, text: bool) -> Result<Vec<i64>> {
    read_array(open(path)?, &path.display().to_string(), text)
}

pub fn save_array(path: &Path, values: &[i64], text: bool) -> Result<()> {
    write_array(create(path)?, values, text)
}

pub fn load_pairs(path: &Path) -> Result<Vec<(usize, usize)>> {
    read_pairs(open(path)?, &path.display().to_string())
}

pub fn save_pairs(path: &Path, pairs: &[(usize, usize)]) -> Result<()> {
    write_pairs(create(path)?, pairs)
}

pub fn load_tree(path: &Path) -> Result<LabeledTree> {
    read_tree(open(path)?, &path.display().to_string())
}

pub fn save_tree(path: &Path, tree: &LabeledTree) -> Result<()> {
    write_tree(create(path)?, tree)
}

/// Raw bytes of a text file, minus one trailing line break.
pub fn load_text(path: &Path) -> Result<Vec<u8>> {
    let mut bytes = std::fs::read(path)?;
    if bytes.ends_with(b"\n") {
        bytes.pop();
        if bytes.ends_with(b"\r") {
            bytes.pop();
        }
    }
    Ok(bytes)
}
