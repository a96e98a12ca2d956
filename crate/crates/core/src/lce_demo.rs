//! Longest common extensions as a batch of range minima over an LCP array.

use crate::batch::QueryBatch;
use crate::error::{Error, Result};
use crate::sparse_table::st_rmq_con_bounded;

/// Suffix array, its inverse, and the LCP array of a byte string.
///
/// `lcp[r]` is the length of the longest common prefix of the suffixes at
/// `sa[r - 1]` and `sa[r]`; `lcp[0]` is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixLcp {
    text: Vec<u8>,
    sa: Vec<usize>,
    rank: Vec<usize>,
    lcp: Vec<usize>,
}

impl SuffixLcp {
    /// Prefix-doubling suffix sort (`O(n log^2 n)`) followed by Kasai's LCP
    /// construction.
    pub fn build(text: &[u8]) -> Result<Self> {
        let n = text.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let mut sa: Vec<usize> = (0..n).collect();
        let mut rank: Vec<usize> = text.iter().map(|&c| c as usize).collect();
        let mut next_rank = vec![0usize; n];
        let mut k = 1;
        loop {
            // Suffixes running out before offset k sort first.
            let key = |i: usize, rank: &[usize]| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
            sa.sort_unstable_by_key(|&i| key(i, &rank));
            next_rank[sa[0]] = 0;
            for w in 1..n {
                let bump = key(sa[w - 1], &rank) != key(sa[w], &rank);
                next_rank[sa[w]] = next_rank[sa[w - 1]] + bump as usize;
            }
            std::mem::swap(&mut rank, &mut next_rank);
            if rank[sa[n - 1]] == n - 1 || k >= n {
                break;
            }
            k *= 2;
        }

        let mut lcp = vec![0usize; n];
        let mut h = 0usize;
        for i in 0..n {
            if rank[i] > 0 {
                let j = sa[rank[i] - 1];
                while i + h < n && j + h < n && text[i + h] == text[j + h] {
                    h += 1;
                }
                lcp[rank[i]] = h;
                h = h.saturating_sub(1);
            } else {
                h = 0;
            }
        }
        Ok(SuffixLcp { text: text.to_vec(), sa, rank, lcp })
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    pub fn suffix_array(&self) -> &[usize] {
        &self.sa
    }

    pub fn rank(&self) -> &[usize] {
        &self.rank
    }

    pub fn lcp(&self) -> &[usize] {
        &self.lcp
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// Longest common extension of every pair of text positions.
    ///
    /// Pairs with distinct ranks become range minima over the LCP array,
    /// answered by the contracted sparse table on a private copy. `n` bounds
    /// every LCP value, so the contraction reads the copy only once.
    pub fn lce_batch(&self, pairs: &[(usize, usize)]) -> Result<Vec<usize>> {
        let n = self.len();
        let mut out = vec![0usize; pairs.len()];
        let mut ranges = Vec::new();
        let mut owners = Vec::new();
        for (t, &(i, j)) in pairs.iter().enumerate() {
            for p in [i, j] {
                if p >= n {
                    return Err(Error::OutOfRange { index: p, len: n });
                }
            }
            if i == j {
                out[t] = n - i;
            } else {
                let (ri, rj) = (self.rank[i], self.rank[j]);
                ranges.push((ri.min(rj) + 1, ri.max(rj)));
                owners.push(t);
            }
        }
        if ranges.is_empty() {
            return Ok(out);
        }
        let mut scratch: Vec<i64> = self.lcp.iter().map(|&v| v as i64).collect();
        let batch = QueryBatch::new(ranges);
        let answers = st_rmq_con_bounded(&mut scratch, &batch, Some(n as i64))?;
        for (t, p) in owners.into_iter().zip(answers) {
            out[t] = self.lcp[p];
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn naive_lce(text: &[u8], i: usize, j: usize) -> usize {
        text[i..].iter().zip(&text[j..]).take_while(|(a, b)| a == b).count()
    }

    #[test]
    fn banana() {
        let s = SuffixLcp::build(b"banana").unwrap();
        assert_eq!(s.suffix_array(), &[5, 3, 1, 0, 4, 2]);
        assert_eq!(s.lcp(), &[0, 1, 3, 0, 0, 2]);
        assert_eq!(s.lce_batch(&[(1, 3), (2, 2), (0, 5)]), Ok(vec![3, 4, 0]));
    }

    #[test]
    fn small_texts() {
        let s = SuffixLcp::build(b"aaa").unwrap();
        assert_eq!(s.suffix_array(), &[2, 1, 0]);
        assert_eq!(s.lcp(), &[0, 1, 2]);
        let s = SuffixLcp::build(b"b").unwrap();
        assert_eq!(s.suffix_array(), &[0]);
        assert_eq!(s.lcp(), &[0]);
        assert_eq!(s.lce_batch(&[(0, 0)]), Ok(vec![1]));
        assert_eq!(SuffixLcp::build(b""), Err(Error::EmptyInput));
        assert_eq!(s.lce_batch(&[(0, 1)]), Err(Error::OutOfRange { index: 1, len: 1 }));
    }

    #[test]
    fn random_texts_against_character_comparison() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let n = rng.gen_range(1..1000);
            let sigma = rng.gen_range(1..5u8);
            let text: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
            let s = SuffixLcp::build(&text).unwrap();
            let mut sorted: Vec<usize> = (0..n).collect();
            sorted.sort_by_key(|&i| &text[i..]);
            assert_eq!(s.suffix_array(), &sorted[..]);
            let pairs: Vec<_> = (0..50).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
            let got = s.lce_batch(&pairs).unwrap();
            for (t, &(i, j)) in pairs.iter().enumerate() {
                let expected = if i == j { n - i } else { naive_lce(&text, i, j) };
                assert_eq!(got[t], expected);
            }
        }
    }
}
