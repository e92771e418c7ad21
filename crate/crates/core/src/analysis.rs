//! Structural checks: girth, density, bi-regularity and 4-cycles.

use std::collections::BTreeMap;
use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_rational::Ratio;
use rayon::prelude::*;
use serde_json::json;

use crate::code::ParityCheckMatrix;
use crate::graph::Bipartite;
use crate::{Error, Result};

/// Length of the shortest cycle. `Acyclic` compares greater than any length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(u32),
    Acyclic,
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Acyclic => f.write_str("acyclic"),
        }
    }
}

/// A girth value together with how it was obtained. Sampled runs only see
/// cycles through the chosen roots, so their value is an upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GirthReport {
    pub girth: Girth,
    pub exact: bool,
}

impl fmt::Display for GirthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.girth)
        } else {
            write!(f, "<= {} (sampled upper bound)", self.girth)
        }
    }
}

struct BfsScratch {
    dist: Vec<u32>,
    parent: Vec<u32>,
    touched: Vec<usize>,
    queue: VecDeque<usize>,
}

const UNSEEN: u32 = u32::MAX;

impl BfsScratch {
    fn new(n: usize) -> Self {
        BfsScratch { dist: vec![UNSEEN; n], parent: vec![UNSEEN; n], touched: Vec::new(), queue: VecDeque::new() }
    }

    /// Shortest cycle closed by the BFS tree rooted at `root`, if shorter than `bound`.
    fn shortest_cycle_from(&mut self, g: &Bipartite, root: usize, bound: usize) -> Option<usize> {
        let mut best = bound;
        self.dist[root] = 0;
        self.touched.push(root);
        self.queue.push_back(root);
        'bfs: while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u] as usize;
            // every cycle found below u is at least 2·du + 1 long
            if 2 * du + 1 >= best {
                break;
            }
            for w in g.unified_neighbors(u) {
                if self.dist[w] == UNSEEN {
                    self.dist[w] = du as u32 + 1;
                    self.parent[w] = u as u32;
                    self.touched.push(w);
                    self.queue.push_back(w);
                } else if self.parent[u] != w as u32 {
                    let len = du + self.dist[w] as usize + 1;
                    if len < best {
                        best = len;
                        if 2 * du + 1 >= best {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        for &v in &self.touched {
            self.dist[v] = UNSEEN;
            self.parent[v] = UNSEEN;
        }
        self.touched.clear();
        self.queue.clear();
        (best < bound).then_some(best)
    }
}

fn girth_over_roots(g: &Bipartite, roots: &[usize]) -> Girth {
    let n = g.num_vertices();
    let best = AtomicUsize::new(usize::MAX);
    roots.par_iter().for_each_init(
        || BfsScratch::new(n),
        |scratch, &root| {
            let bound = best.load(Ordering::Relaxed);
            if let Some(len) = scratch.shortest_cycle_from(g, root, bound) {
                best.fetch_min(len, Ordering::Relaxed);
            }
        },
    );
    match best.into_inner() {
        usize::MAX => Girth::Acyclic,
        len => Girth::Finite(len as u32),
    }
}

/// Exact girth: breadth-first search from every vertex.
pub fn girth(g: &Bipartite) -> Girth {
    let roots: Vec<usize> = (0..g.num_vertices()).collect();
    girth_over_roots(g, &roots)
}

pub fn girth_report(g: &Bipartite) -> GirthReport {
    GirthReport { girth: girth(g), exact: true }
}

/// Minimum cycle length seen from `roots` only. Never a lower bound.
pub fn girth_sampled(g: &Bipartite, roots: &[usize]) -> GirthReport {
    let exact = roots.len() >= g.num_vertices() && {
        let mut r = roots.to_vec();
        r.sort_unstable();
        r.dedup();
        r.len() == g.num_vertices()
    };
    GirthReport { girth: girth_over_roots(g, roots), exact }
}

/// `2|E| / (|V|(|V| - 1))`, exact.
pub fn density(g: &Bipartite) -> Result<Ratio<u64>> {
    let v = g.num_vertices() as u64;
    if v < 2 {
        return Err(Error::DegenerateGraph);
    }
    Ok(Ratio::new(2 * g.num_edges() as u64, v * (v - 1)))
}

/// Decimal rendering with `sig` significant figures.
pub fn format_significant(value: &Ratio<u64>, sig: usize) -> String {
    let v = *value.numer() as f64 / *value.denom() as f64;
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Whether `value` rounds (half up) to the decimal string `displayed`,
/// at the number of decimal places `displayed` shows.
pub fn matches_displayed(value: &Ratio<u64>, displayed: &str) -> bool {
    let places = displayed.split_once('.').map_or(0, |(_, frac)| frac.len());
    let digits: String = displayed.chars().filter(|c| c.is_ascii_digit()).collect();
    let Ok(expected) = digits.parse::<u128>() else {
        return false;
    };
    let scale = 10u128.pow(places as u32);
    let num = *value.numer() as u128 * scale;
    let den = *value.denom() as u128;
    (2 * num + den) / (2 * den) == expected
}

/// Constant degrees on each side: `s` for lines (right), `r` for points (left).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bidegree {
    pub line_degree: usize,
    pub point_degree: usize,
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.line_degree, self.point_degree)
    }
}

/// Vertices whose degree differs from the most common degree on their side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irregularity {
    pub usual_point_degree: usize,
    pub usual_line_degree: usize,
    /// `(point index, degree)`
    pub points: Vec<(usize, usize)>,
    /// `(line index, degree)`
    pub lines: Vec<(usize, usize)>,
}

impl fmt::Display for Irregularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not bi-regular: ")?;
        for (i, d) in &self.points {
            write!(f, "point {i} has degree {d} (usual {}); ", self.usual_point_degree)?;
        }
        for (j, d) in &self.lines {
            write!(f, "line {j} has degree {d} (usual {}); ", self.usual_line_degree)?;
        }
        Ok(())
    }
}

fn mode_and_outliers(degrees: impl Iterator<Item = usize>) -> (usize, Vec<(usize, usize)>) {
    let degrees: Vec<usize> = degrees.collect();
    let mut hist = BTreeMap::new();
    for &d in &degrees {
        *hist.entry(d).or_insert(0usize) += 1;
    }
    // ties resolved towards the larger degree
    let mode = hist.iter().max_by_key(|&(d, c)| (*c, *d)).map_or(0, |(d, _)| *d);
    let outliers = degrees.iter().enumerate().filter(|&(_, &d)| d != mode).map(|(i, &d)| (i, d)).collect();
    (mode, outliers)
}

pub fn check_biregular(g: &Bipartite) -> std::result::Result<Bidegree, Irregularity> {
    let (pd, points) = mode_and_outliers((0..g.num_left()).map(|i| g.left(i).len()));
    let (ld, lines) = mode_and_outliers((0..g.num_right()).map(|j| g.right(j).len()));
    if points.is_empty() && lines.is_empty() {
        Ok(Bidegree { line_degree: ld, point_degree: pd })
    } else {
        Err(Irregularity { usual_point_degree: pd, usual_line_degree: ld, points, lines })
    }
}

/// True iff two rows of `h` share at least two columns.
pub fn has_four_cycle(h: &ParityCheckMatrix) -> bool {
    find_four_cycle(h).is_some()
}

/// The lexicographically first pair of rows sharing two columns.
pub fn find_four_cycle(h: &ParityCheckMatrix) -> Option<(usize, usize)> {
    let mut count = vec![0u32; h.rows()];
    let mut touched = Vec::new();
    for i in 0..h.rows() {
        for &j in h.row(i) {
            for &k in h.col(j as usize) {
                let k = k as usize;
                if k > i {
                    if count[k] == 0 {
                        touched.push(k);
                    }
                    count[k] += 1;
                }
            }
        }
        let hit = touched.iter().copied().filter(|&k| count[k] >= 2).min();
        for &k in &touched {
            count[k] = 0;
        }
        touched.clear();
        if let Some(k) = hit {
            return Some((i, k));
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GirthMode {
    Exact,
    /// BFS from this many evenly spaced roots; reports an upper bound.
    Sampled(usize),
    Skip,
}

/// Summary statistics of a bipartite graph.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphStats {
    pub num_points: usize,
    pub num_lines: usize,
    pub num_edges: usize,
    pub bidegree: Option<Bidegree>,
    pub density: Ratio<u64>,
    pub girth: Option<GirthReport>,
    pub components: usize,
}

impl GraphStats {
    pub fn compute(g: &Bipartite, mode: GirthMode) -> Result<Self> {
        let girth = match mode {
            GirthMode::Exact => Some(girth_report(g)),
            GirthMode::Sampled(k) => {
                let n = g.num_vertices();
                let k = k.clamp(1, n.max(1));
                let roots: Vec<usize> = (0..k).map(|i| i * n / k).collect();
                Some(girth_sampled(g, &roots))
            }
            GirthMode::Skip => None,
        };
        Ok(GraphStats {
            num_points: g.num_left(),
            num_lines: g.num_right(),
            num_edges: g.num_edges(),
            bidegree: check_biregular(g).ok(),
            density: density(g)?,
            girth,
            components: crate::graph::connected_components(g).len(),
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_points + self.num_lines
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "num_points": self.num_points,
            "num_lines": self.num_lines,
            "num_vertices": self.num_vertices(),
            "num_edges": self.num_edges,
            "bidegree": self.bidegree.map(|b| [b.line_degree, b.point_degree]),
            "density": {
                "numerator": self.density.numer(),
                "denominator": self.density.denom(),
                "decimal": format_significant(&self.density, 3),
            },
            "girth": self.girth.map(|g| json!({
                "value": match g.girth { Girth::Finite(v) => json!(v), Girth::Acyclic => json!("acyclic") },
                "exact": g.exact,
            })),
            "components": self.components,
        })
    }
}

impl fmt::Display for GraphStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "points:     {}", self.num_points)?;
        writeln!(f, "lines:      {}", self.num_lines)?;
        writeln!(f, "vertices:   {}", self.num_vertices())?;
        writeln!(f, "edges:      {}", self.num_edges)?;
        match self.bidegree {
            Some(b) => writeln!(f, "bidegree:   {b}")?,
            None => writeln!(f, "bidegree:   irregular")?,
        }
        writeln!(f, "density:    {} ~ {}", self.density, format_significant(&self.density, 3))?;
        if let Some(g) = self.girth {
            writeln!(f, "girth:      {g}")?;
        }
        write!(f, "components: {}", self.components)
    }
}
