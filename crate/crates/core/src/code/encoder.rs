use super::gf2::{self, pack_bits, BitMatrix};
use super::ParityCheckMatrix;
use crate::{Error, Result};

/// Systematic generator `G = [I_K | A]` for the code of `H`, up to a column
/// permutation.
///
/// `permutation[i]` is the original column placed at position `i`: the `K`
/// free (information) columns come first, then the pivot (parity) columns.
#[derive(Clone, Debug)]
pub struct SystematicGenerator {
    n: usize,
    k: usize,
    permutation: Vec<usize>,
    /// For each pivot row, the free-column bits of the reduced row, packed.
    parity_masks: Vec<Vec<u64>>,
}

/// Reduces `H` to row echelon form and reads off a systematic generator.
pub fn systematic_generator(h: &ParityCheckMatrix) -> Result<SystematicGenerator> {
    let mut m = h.to_dense_within(gf2::DEFAULT_DENSE_BUDGET)?;
    let pivots = m.eliminate(true);
    let n = h.cols();
    let k = n - pivots.len();
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    m.truncate_rows(pivots.len());

    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let parity_masks = (0..pivots.len())
        .map(|r| {
            let bits: Vec<u8> = free.iter().map(|&c| u8::from(m.get(r, c))).collect();
            pack_bits(&bits)
        })
        .collect();
    let permutation = free.iter().chain(&pivots).copied().collect();
    Ok(SystematicGenerator { n, k, permutation, parity_masks })
}

impl SystematicGenerator {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// Row `j` of `G` in permuted column order: `e_j` followed by the parity part.
    pub fn generator_row(&self, j: usize) -> Vec<u8> {
        let mut row = vec![0u8; self.n];
        row[j] = 1;
        for (i, mask) in self.parity_masks.iter().enumerate() {
            row[self.k + i] = (mask[j / 64] >> (j % 64) & 1) as u8;
        }
        row
    }

    /// `G` as a dense matrix in permuted column order.
    pub fn generator_matrix(&self) -> BitMatrix {
        let mut g = BitMatrix::zeros(self.k, self.n);
        for j in 0..self.k {
            for (c, &b) in self.generator_row(j).iter().enumerate() {
                if b == 1 {
                    g.set(j, c);
                }
            }
        }
        g
    }

    /// Places a word given in permuted order back into original column order.
    pub fn unpermute(&self, permuted: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; self.n];
        for (i, &col) in self.permutation.iter().enumerate() {
            out[col] = permuted[i];
        }
        out
    }

    /// Encodes `msg` (K bits) to a codeword in the original column order.
    pub fn encode(&self, msg: &[u8]) -> Result<Vec<u8>> {
        if msg.len() != self.k {
            return Err(Error::LengthMismatch { expected: self.k, actual: msg.len() });
        }
        let packed = pack_bits(msg);
        let mut word = vec![0u8; self.n];
        for (j, &b) in msg.iter().enumerate() {
            word[self.permutation[j]] = b & 1;
        }
        for (i, mask) in self.parity_masks.iter().enumerate() {
            let ones: u32 = mask.iter().zip(&packed).map(|(a, b)| (a & b).count_ones()).sum();
            word[self.permutation[self.k + i]] = (ones & 1) as u8;
        }
        Ok(word)
    }

    /// Information bits of a codeword given in original column order.
    pub fn extract_message(&self, word: &[u8]) -> Vec<u8> {
        self.permutation[..self.k].iter().map(|&c| word[c]).collect()
    }
}

/// Free-function form of [`SystematicGenerator::encode`].
pub fn encode(g: &SystematicGenerator, msg: &[u8]) -> Result<Vec<u8>> {
    g.encode(msg)
}
