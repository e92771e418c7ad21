//! The alist text format (MacKay) for sparse binary matrices.
//!
//! ```text
//! N M
//! max_col_weight max_row_weight
//! col weights (N values)
//! row weights (M values)
//! N lines: 1-based row indices of each column, zero-padded
//! M lines: 1-based column indices of each row, zero-padded
//! ```
//!
//! When every column (or row) is empty its lists are written as a single `0`.

use std::fmt::Write;

use super::ParityCheckMatrix;
use crate::{Error, Result};

pub fn export_alist(h: &ParityCheckMatrix) -> String {
    let col_w: Vec<usize> = (0..h.cols()).map(|j| h.col(j).len()).collect();
    let row_w: Vec<usize> = (0..h.rows()).map(|i| h.row(i).len()).collect();
    let max_c = col_w.iter().copied().max().unwrap_or(0);
    let max_r = row_w.iter().copied().max().unwrap_or(0);

    let join = |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    writeln!(out, "{} {}", h.cols(), h.rows()).unwrap();
    writeln!(out, "{max_c} {max_r}").unwrap();
    writeln!(out, "{}", join(&mut col_w.iter().copied())).unwrap();
    writeln!(out, "{}", join(&mut row_w.iter().copied())).unwrap();
    for j in 0..h.cols() {
        let list = h.col(j).iter().map(|&i| i as usize + 1);
        let pad = std::iter::repeat_n(0, (max_c - h.col(j).len()).max(usize::from(max_c == 0)));
        writeln!(out, "{}", join(&mut list.chain(pad))).unwrap();
    }
    for i in 0..h.rows() {
        let list = h.row(i).iter().map(|&j| j as usize + 1);
        let pad = std::iter::repeat_n(0, (max_r - h.row(i).len()).max(usize::from(max_r == 0)));
        writeln!(out, "{}", join(&mut list.chain(pad))).unwrap();
    }
    out
}

fn err(msg: impl Into<String>) -> Error {
    Error::Alist(msg.into())
}

fn numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| err(format!("not a number: {t:?}")))).collect()
}

/// Parses an alist document. Index lists may be zero-padded or not.
pub fn import_alist(text: &str) -> Result<ParityCheckMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let mut next =
        |what: &str| -> Result<Vec<usize>> { numbers(lines.next().ok_or_else(|| err(format!("missing {what}")))?) };

    let dims = next("dimensions")?;
    let [n, m] = dims[..] else {
        return Err(err("first line must be \"N M\""));
    };
    let maxes = next("maximum weights")?;
    let [max_c, max_r] = maxes[..] else {
        return Err(err("second line must hold two maximum weights"));
    };
    let col_w = next("column weights")?;
    let row_w = next("row weights")?;
    if col_w.len() != n || row_w.len() != m {
        return Err(err("weight list lengths disagree with dimensions"));
    }
    if col_w.iter().copied().max().unwrap_or(0) != max_c || row_w.iter().copied().max().unwrap_or(0) != max_r {
        return Err(err("maximum weights disagree with weight lists"));
    }

    let read_lists =
        |count: usize, weights: &[usize], bound: usize, next: &mut dyn FnMut(&str) -> Result<Vec<usize>>| {
            (0..count)
                .map(|k| {
                    let entries: Vec<usize> = next("index list")?.into_iter().filter(|&v| v != 0).collect();
                    if entries.len() != weights[k] {
                        return Err(err(format!(
                            "list {} has {} entries, weight says {}",
                            k + 1,
                            entries.len(),
                            weights[k]
                        )));
                    }
                    let mut seen = entries.clone();
                    seen.sort_unstable();
                    seen.dedup();
                    if seen.len() != entries.len() {
                        return Err(err(format!("list {} repeats an index", k + 1)));
                    }
                    if let Some(&bad) = entries.iter().find(|&&v| v > bound) {
                        return Err(err(format!("index {bad} out of range 1..={bound}")));
                    }
                    Ok(entries.into_iter().map(|v| (v - 1) as u32).collect::<Vec<u32>>())
                })
                .collect::<Result<Vec<_>>>()
        };
    let cols = read_lists(n, &col_w, m, &mut next)?;
    let rows = read_lists(m, &row_w, n, &mut next)?;

    let h = ParityCheckMatrix::from_row_lists(n, rows)?;
    for (j, list) in cols.into_iter().enumerate() {
        let mut list = list;
        list.sort_unstable();
        if list != h.col(j) {
            return Err(err(format!("column {} disagrees with the row lists", j + 1)));
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_example_layout() {
        let h = ParityCheckMatrix::from_dense(2, 3, &[1, 1, 0, 0, 1, 1]);
        let text = export_alist(&h);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines, ["3 2", "2 2", "1 2 1", "2 2", "1 0", "1 2", "2 0", "1 2", "2 3"]);
        assert_eq!(import_alist(&text).unwrap(), h);
    }

    #[test]
    fn unpadded_is_accepted() {
        let text = "3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n2\n1 2\n2 3\n";
        let h = import_alist(text).unwrap();
        assert_eq!(h, ParityCheckMatrix::from_dense(2, 3, &[1, 1, 0, 0, 1, 1]));
    }

    #[test]
    fn malformed_documents() {
        // weight says 2, list has one entry
        let bad_weight = "3 2\n2 2\n2 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n";
        assert!(import_alist(bad_weight).is_err());
        let out_of_range = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 3\n2 0\n1 2\n2 3\n";
        assert!(import_alist(out_of_range).is_err());
        let duplicate = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 1\n2 0\n1 2\n2 3\n";
        assert!(import_alist(duplicate).is_err());
        // column lists inconsistent with row lists
        let inconsistent = "3 2\n2 2\n1 2 1\n2 2\n2 0\n1 2\n1 0\n1 2\n2 3\n";
        assert!(import_alist(inconsistent).is_err());
        assert!(import_alist("").is_err());
        assert!(import_alist("3 x\n").is_err());
        assert!(import_alist("3 2\n2 2\n1 2 1\n2 2\n1 0\n").is_err());
    }
}
