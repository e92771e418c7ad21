//! Parity-check matrices derived from incidence graphs, and the linear
//! algebra around them: rank, rate, systematic encoding, alist I/O.
//!
//! Lines are codeword bits (columns) and points are parity checks (rows), so
//! `H` is the point/line block of the graph's adjacency matrix.

mod alist;
mod encoder;
pub mod gf2;

use std::fmt;

use serde::Serialize;

pub use alist::{export_alist, import_alist};
pub use encoder::{encode, systematic_generator, SystematicGenerator};
use gf2::BitMatrix;

use crate::graph::{connected_components, Bipartite, ComponentSelection, IncidenceGraph};
use crate::{Error, Result};

/// Sparse binary matrix with row and column index lists kept in sync.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    rows: usize,
    cols: usize,
    row_lists: Vec<Vec<u32>>,
    col_lists: Vec<Vec<u32>>,
}

impl ParityCheckMatrix {
    /// Builds from per-row column indices. Indices are sorted; duplicates and
    /// out-of-range entries are rejected.
    pub fn from_row_lists(cols: usize, mut row_lists: Vec<Vec<u32>>) -> Result<Self> {
        let mut col_lists = vec![Vec::new(); cols];
        for (i, row) in row_lists.iter_mut().enumerate() {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Alist(format!("row {} repeats a column", i + 1)));
            }
            for &j in row.iter() {
                let list =
                    col_lists.get_mut(j as usize).ok_or_else(|| Error::Alist(format!("column {j} out of range")))?;
                list.push(i as u32);
            }
        }
        Ok(ParityCheckMatrix { rows: row_lists.len(), cols, row_lists, col_lists })
    }

    /// Row-major 0/1 data.
    pub fn from_dense(rows: usize, cols: usize, data: &[u8]) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must equal rows * cols");
        let lists = data
            .chunks(cols.max(1))
            .take(rows)
            .map(|r| r.iter().enumerate().filter(|(_, &b)| b != 0).map(|(j, _)| j as u32).collect())
            .collect();
        Self::from_row_lists(cols, lists).expect("dense rows are well formed")
    }

    /// Left vertices become rows, right vertices columns.
    pub fn from_bipartite(g: &Bipartite) -> Self {
        let lists = (0..g.num_left()).map(|i| g.left(i).to_vec()).collect();
        Self::from_row_lists(g.num_right(), lists).expect("bipartite adjacency is well formed")
    }

    /// A matrix with no checks: every word is a codeword.
    pub fn empty(cols: usize) -> Self {
        ParityCheckMatrix { rows: 0, cols, row_lists: Vec::new(), col_lists: vec![Vec::new(); cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.row_lists[i]
    }

    pub fn col(&self, j: usize) -> &[u32] {
        &self.col_lists[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.row_lists[i].binary_search(&(j as u32)).is_ok()
    }

    pub fn num_ones(&self) -> usize {
        self.row_lists.iter().map(Vec::len).sum()
    }

    pub fn to_bipartite(&self) -> Bipartite {
        Bipartite::from_edges(
            self.rows,
            self.cols,
            self.row_lists.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |&j| (i, j as usize))),
        )
    }

    pub fn to_dense(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, self.cols);
        for (i, r) in self.row_lists.iter().enumerate() {
            for &j in r {
                m.set(i, j as usize);
            }
        }
        m
    }

    /// Dense copy, refusing matrices above `budget` bits.
    pub fn to_dense_within(&self, budget: u64) -> Result<BitMatrix> {
        gf2::check_budget(self.rows, self.cols, budget)?;
        Ok(self.to_dense())
    }
}

/// `H` of the whole graph: one row per point, one column per (admissible) line.
pub fn parity_check_from_graph(g: &IncidenceGraph) -> Result<ParityCheckMatrix> {
    if g.num_points() == 0 || g.num_lines() == 0 {
        return Err(Error::EmptySide);
    }
    let lists = (0..g.num_points()).map(|i| g.point_neighbors(i).to_vec()).collect();
    ParityCheckMatrix::from_row_lists(g.num_lines(), lists)
}

/// `H` honouring the graph spec's component selection. With
/// [`ComponentSelection::Largest`] rows and columns are those of the largest
/// connected component, in ascending index order.
pub fn parity_check_for_spec(g: &IncidenceGraph) -> Result<ParityCheckMatrix> {
    let full = parity_check_from_graph(g)?;
    match g.spec().component {
        ComponentSelection::All => Ok(full),
        ComponentSelection::Largest => {
            let comps = connected_components(&g.to_bipartite());
            if comps.len() == 1 {
                return Ok(full);
            }
            let comp = &comps[0];
            let mut col_map = vec![u32::MAX; full.cols()];
            for (new, &old) in comp.lines.iter().enumerate() {
                col_map[old as usize] = new as u32;
            }
            let lists = comp
                .points
                .iter()
                .map(|&p| full.row(p as usize).iter().map(|&j| col_map[j as usize]).collect())
                .collect();
            let h = ParityCheckMatrix::from_row_lists(comp.lines.len(), lists)?;
            if h.rows() == 0 || h.cols() == 0 {
                return Err(Error::EmptySide);
            }
            Ok(h)
        }
    }
}

/// Rank over GF(2) via a dense bit-packed copy.
pub fn gf2_rank(h: &ParityCheckMatrix) -> Result<usize> {
    gf2_rank_within(h, gf2::DEFAULT_DENSE_BUDGET)
}

pub fn gf2_rank_within(h: &ParityCheckMatrix, budget: u64) -> Result<usize> {
    let mut m = h.to_dense_within(budget)?;
    Ok(m.eliminate(false).len())
}

/// `H · wordᵀ` over GF(2).
pub fn syndrome(h: &ParityCheckMatrix, word: &[u8]) -> Result<Vec<u8>> {
    if word.len() != h.cols() {
        return Err(Error::LengthMismatch { expected: h.cols(), actual: word.len() });
    }
    Ok(h.row_lists.iter().map(|r| r.iter().fold(0u8, |acc, &j| acc ^ (word[j as usize] & 1))).collect())
}

pub fn is_codeword(h: &ParityCheckMatrix, word: &[u8]) -> Result<bool> {
    Ok(syndrome(h, word)?.iter().all(|&s| s == 0))
}

pub fn hamming_distance(x: &[u8], y: &[u8]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), actual: y.len() });
    }
    Ok(x.iter().zip(y).filter(|(a, b)| (*a & 1) != (*b & 1)).count())
}

/// Rate of the graph codes in closed form: `(q-1)/q` for the full graph and
/// `1 - q/r` when lines are restricted to `r` values of `x`.
pub fn design_rate_formula(base: u32, restriction: Option<u32>) -> f64 {
    let q = base as f64;
    match restriction {
        None => (q - 1.0) / q,
        Some(r) => 1.0 - q / r as f64,
    }
}

/// Block length, rank and rates of a code.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodeSpec {
    pub n: usize,
    pub rows: usize,
    pub rank: usize,
    /// `n - rank`
    pub k: usize,
    /// `(n - rows) / n`, which equals the closed-form family rate for graph codes.
    pub design_rate: f64,
    /// `k / n`
    pub true_rate: f64,
    /// Set when the closed-form rate disagrees with `(n - rows) / n`.
    pub formula_rate: Option<f64>,
    /// `rank < rows`, i.e. `k` exceeds `n - rows`.
    pub rank_deficient: bool,
}

impl CodeSpec {
    pub fn discrepancy(&self) -> bool {
        self.rank_deficient || self.formula_rate.is_some_and(|f| (f - self.design_rate).abs() > 1e-12)
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N (bits):    {}", self.n)?;
        writeln!(f, "checks:      {}", self.rows)?;
        writeln!(f, "rank:        {}", self.rank)?;
        writeln!(f, "K:           {}", self.k)?;
        writeln!(f, "design rate: {:.4}", self.design_rate)?;
        write!(f, "true rate:   {:.4}", self.true_rate)?;
        if let Some(fr) = self.formula_rate {
            write!(f, "\nformula rate {fr:.4} differs from (N-R)/N")?;
        }
        if self.rank_deficient {
            write!(f, "\nnote: H is rank deficient, K = N - rank = {} > N - R = {}", self.k, self.n - self.rows)?;
        }
        Ok(())
    }
}

pub fn rate_report(h: &ParityCheckMatrix) -> Result<CodeSpec> {
    let rank = gf2_rank(h)?;
    let n = h.cols();
    let design = (n as f64 - h.rows() as f64) / n as f64;
    Ok(CodeSpec {
        n,
        rows: h.rows(),
        rank,
        k: n - rank,
        design_rate: design,
        true_rate: (n - rank) as f64 / n as f64,
        formula_rate: None,
        rank_deficient: rank < h.rows(),
    })
}

/// Like [`rate_report`], also comparing against the closed-form family rate.
pub fn rate_report_for_graph(g: &IncidenceGraph, h: &ParityCheckMatrix) -> Result<CodeSpec> {
    let mut spec = rate_report(h)?;
    let r = g.spec().restriction.as_ref().map(|xs| xs.len() as u32);
    let formula = design_rate_formula(g.geometry().base(), r);
    if (formula - spec.design_rate).abs() > 1e-12 {
        spec.formula_rate = Some(formula);
    }
    Ok(spec)
}
