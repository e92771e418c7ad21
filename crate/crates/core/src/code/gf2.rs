//! Dense bit-packed matrices over GF(2) and Gaussian elimination.

use crate::{Error, Result};

/// Default limit for dense copies, in bits (128 MiB).
pub const DEFAULT_DENSE_BUDGET: u64 = 1 << 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] |= 1 << (c % 64);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.data.split_at_mut(hi * w);
        head[lo * w..(lo + 1) * w].swap_with_slice(&mut tail[..w]);
    }

    /// `row[dst] ^= row[src]`, touching words from `from_word` on.
    fn xor_row_into(&mut self, src: usize, dst: usize, from_word: usize) {
        let w = self.words;
        let (s, d) = (src * w, dst * w);
        for k in from_word..w {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }

    /// Eliminates in place. With `reduced`, clears above pivots too (RREF).
    /// Returns the pivot column of each of the first `rank` rows.
    pub fn eliminate(&mut self, reduced: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(rank, pivot);
            let from = col / 64;
            let start = if reduced { 0 } else { rank + 1 };
            for r in start..self.rows {
                if r != rank && self.get(r, col) {
                    self.xor_row_into(rank, r, from);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(false).len()
    }

    /// Drops every row from `rows` on.
    pub fn truncate_rows(&mut self, rows: usize) {
        self.rows = rows.min(self.rows);
        self.data.truncate(self.rows * self.words);
    }
}

pub(crate) fn check_budget(rows: usize, cols: usize, budget: u64) -> Result<()> {
    let bits = rows as u64 * cols as u64;
    if bits > budget {
        return Err(Error::DenseBudgetExceeded { rows, cols, budget });
    }
    Ok(())
}

/// Packs 0/1 bytes into words, bit `i` of the slice at bit `i % 64` of word `i / 64`.
pub fn pack_bits(bits: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; bits.len().div_ceil(64)];
    for (i, &b) in bits.iter().enumerate() {
        if b & 1 == 1 {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}
