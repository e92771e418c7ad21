//! Points, lines and the incidence graphs built from them.
//!
//! A point `(a, b, c)` has small coordinates `a, c` (in `F_q` or `Z_n`) and a
//! big coordinate `b` (in `F_q²` or `Z_n²`); a line `[x, y, z]` has big `x, y`
//! and small `z`. They are incident when
//!
//! ```text
//! y - b = a·x
//! z - c = a·y + a·y^q        (field family; y^n and the moduli n², n for rings)
//! ```
//!
//! Fixing a point and `x` determines the line, and fixing a line and `a`
//! determines the point, so points have degree `|x-domain|` and lines degree
//! `q`. Vertices are identified by mixed-radix indices; adjacency is stored per
//! point and line neighbourhoods are recomputed on demand.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{FieldCtx, RingCtx};
use crate::{Error, Result};

/// Default cap on the number of edges [`build_graph`] will materialise.
pub const DEFAULT_EDGE_BUDGET: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `F(F_q, F_q²)`
    Field,
    /// `F(Z_n, Z_n²)`
    Ring,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Field => "field",
            Family::Ring => "ring",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentSelection {
    All,
    #[default]
    Largest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.x, self.y, self.z)
    }
}

/// Coordinate arithmetic of one graph family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Geometry {
    Field(FieldCtx),
    Ring(RingCtx),
}

impl Geometry {
    pub fn new(family: Family, base: u32) -> Result<Self> {
        Ok(match family {
            Family::Field => Geometry::Field(FieldCtx::new(base)?),
            Family::Ring => Geometry::Ring(RingCtx::new(base)?),
        })
    }

    pub fn family(&self) -> Family {
        match self {
            Geometry::Field(_) => Family::Field,
            Geometry::Ring(_) => Family::Ring,
        }
    }

    /// `q` or `n`.
    pub fn base(&self) -> u32 {
        match self {
            Geometry::Field(f) => f.q(),
            Geometry::Ring(r) => r.n(),
        }
    }

    /// Size of the big coordinate domain, `q²` or `n²`.
    pub fn big_order(&self) -> u32 {
        match self {
            Geometry::Field(f) => f.order(),
            Geometry::Ring(r) => r.big_order(),
        }
    }

    /// Modulus description for field graphs.
    pub fn modulus_description(&self) -> Option<String> {
        match self {
            Geometry::Field(f) => Some(f.modulus_string()),
            Geometry::Ring(_) => None,
        }
    }

    /// Small-coordinate values in canonical order.
    pub fn small_values(&self) -> Vec<u32> {
        match self {
            Geometry::Field(f) => f.subfield_elements().to_vec(),
            Geometry::Ring(r) => (0..r.n()).collect(),
        }
    }

    #[inline]
    pub fn small_index(&self, v: u32) -> Option<usize> {
        match self {
            Geometry::Field(f) => f.subfield_index(v),
            Geometry::Ring(r) => (v < r.n()).then_some(v as usize),
        }
    }

    #[inline]
    fn small_at(&self, i: usize) -> u32 {
        match self {
            Geometry::Field(f) => f.subfield_elements()[i],
            Geometry::Ring(_) => i as u32,
        }
    }

    #[inline]
    pub fn is_big(&self, v: u32) -> bool {
        v < self.big_order()
    }

    fn check_small(&self, v: u32) -> Result<()> {
        match self.small_index(v) {
            Some(_) => Ok(()),
            None => Err(Error::NotInDomain { value: v, domain: self.small_domain_name() }),
        }
    }

    fn check_big(&self, v: u32) -> Result<()> {
        if self.is_big(v) {
            Ok(())
        } else {
            Err(Error::NotInDomain { value: v, domain: self.big_domain_name() })
        }
    }

    fn small_domain_name(&self) -> &'static str {
        match self {
            Geometry::Field(_) => "F_q",
            Geometry::Ring(_) => "Z_n",
        }
    }

    fn big_domain_name(&self) -> &'static str {
        match self {
            Geometry::Field(_) => "F_q^2",
            Geometry::Ring(_) => "Z_n^2",
        }
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        self.check_small(p.a)?;
        self.check_big(p.b)?;
        self.check_small(p.c)
    }

    pub fn check_line(&self, l: &Line) -> Result<()> {
        self.check_big(l.x)?;
        self.check_big(l.y)?;
        self.check_small(l.z)
    }

    /// `(y, z)` of the line through `(a, b, c)` with first coordinate `x`.
    #[inline]
    fn solve_line(&self, a: u32, b: u32, c: u32, x: u32) -> (u32, u32) {
        match self {
            Geometry::Field(f) => {
                let y = f.add(b, f.mul(a, x));
                let z = f.add(c, f.trace_term_unchecked(a, y));
                (y, z)
            }
            Geometry::Ring(r) => {
                let y = r.add_big(b, r.mul_big(a, x));
                let z = r.reduce_small(c as u64 + r.trace_term(a, y) as u64);
                (y, z)
            }
        }
    }

    /// `(b, c)` of the point on `[x, y, z]` with first coordinate `a`.
    #[inline]
    fn solve_point(&self, x: u32, y: u32, z: u32, a: u32) -> (u32, u32) {
        match self {
            Geometry::Field(f) => {
                let b = f.sub(y, f.mul(a, x));
                let c = f.sub(z, f.trace_term_unchecked(a, y));
                (b, c)
            }
            Geometry::Ring(r) => {
                let b = r.sub_big(y, r.mul_big(a, x));
                let c = r.sub_small(z, r.trace_term(a, y));
                (b, c)
            }
        }
    }

    /// The incidence relation.
    pub fn incident(&self, p: &Point, l: &Line) -> Result<bool> {
        self.check_point(p)?;
        self.check_line(l)?;
        Ok(self.solve_line(p.a, p.b, p.c, l.x) == (l.y, l.z))
    }

    /// The unique line `[x, y, z]` through `p`.
    pub fn line_through(&self, p: &Point, x: u32) -> Result<Line> {
        self.check_point(p)?;
        self.check_big(x)?;
        let (y, z) = self.solve_line(p.a, p.b, p.c, x);
        Ok(Line { x, y, z })
    }

    /// The unique point `(a, b, c)` on `l`.
    pub fn point_on(&self, l: &Line, a: u32) -> Result<Point> {
        self.check_line(l)?;
        self.check_small(a)?;
        let (b, c) = self.solve_point(l.x, l.y, l.z, a);
        Ok(Point { a, b, c })
    }

    pub fn num_points(&self) -> usize {
        let q = self.base() as usize;
        q.pow(4)
    }

    /// Mixed-radix index `(a, b, c)`, small coordinates by canonical position.
    pub fn point_index(&self, p: &Point) -> Result<usize> {
        self.check_point(p)?;
        Ok(self.point_index_unchecked(p))
    }

    fn point_index_unchecked(&self, p: &Point) -> usize {
        let q = self.base() as usize;
        let q2 = self.big_order() as usize;
        let a = self.small_index(p.a).unwrap();
        let c = self.small_index(p.c).unwrap();
        (a * q2 + p.b as usize) * q + c
    }

    pub fn point_at(&self, idx: usize) -> Point {
        let q = self.base() as usize;
        let q2 = self.big_order() as usize;
        let c = idx % q;
        let b = (idx / q) % q2;
        let a = idx / (q * q2);
        Point { a: self.small_at(a), b: b as u32, c: self.small_at(c) }
    }

    /// Mixed-radix index `(x, y, z)` among all `q⁵` lines.
    pub fn line_index(&self, l: &Line) -> Result<usize> {
        self.check_line(l)?;
        let q = self.base() as usize;
        let q2 = self.big_order() as usize;
        Ok((l.x as usize * q2 + l.y as usize) * q + self.small_index(l.z).unwrap())
    }

    pub fn line_at(&self, idx: usize) -> Line {
        let q = self.base() as usize;
        let q2 = self.big_order() as usize;
        let z = idx % q;
        let y = (idx / q) % q2;
        let x = idx / (q * q2);
        Line { x: x as u32, y: y as u32, z: self.small_at(z) }
    }
}

/// Everything needed to rebuild a graph; edges are always recomputed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub family: Family,
    pub base: u32,
    /// Defining polynomial of `F_q²`; informational, checked when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    /// Allowed values of the line coordinate `x`, in order. `None` keeps all.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction: Option<Vec<u32>>,
    #[serde(default)]
    pub component: ComponentSelection,
}

impl GraphSpec {
    pub fn new(family: Family, base: u32) -> Self {
        GraphSpec { family, base, modulus: None, restriction: None, component: ComponentSelection::default() }
    }

    pub fn field(q: u32) -> Self {
        Self::new(Family::Field, q)
    }

    pub fn ring(n: u32) -> Self {
        Self::new(Family::Ring, n)
    }

    pub fn with_restriction(mut self, xs: Vec<u32>) -> Self {
        self.restriction = Some(xs);
        self
    }

    /// Restrict to the first `r` x-values in canonical (ascending) order.
    pub fn with_first_r(self, r: u32) -> Self {
        self.with_restriction((0..r).collect())
    }

    pub fn with_component(mut self, component: ComponentSelection) -> Self {
        self.component = component;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph spec serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub max_edges: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { max_edges: DEFAULT_EDGE_BUDGET }
    }
}

/// A point/line incidence graph, possibly restricted to lines with `x ∈ R`.
///
/// Lines are indexed locally as `(pos(x) · q² + y) · q + z`, where `pos(x)`
/// is the position of `x` in the restriction list, so the unrestricted graph
/// uses the global mixed-radix index.
#[derive(Clone, Debug)]
pub struct IncidenceGraph {
    spec: GraphSpec,
    geometry: Geometry,
    x_values: Vec<u32>,
    x_pos: Vec<Option<u32>>,
    adjacency: Vec<u32>,
}

/// Builds the graph described by `spec` with the default edge budget.
pub fn build_graph(spec: &GraphSpec) -> Result<IncidenceGraph> {
    build_graph_with(spec, BuildOptions::default())
}

pub fn build_graph_with(spec: &GraphSpec, opts: BuildOptions) -> Result<IncidenceGraph> {
    let geometry = Geometry::new(spec.family, spec.base)?;
    if let (Some(given), Some(actual)) = (&spec.modulus, geometry.modulus_description()) {
        if *given != actual {
            return Err(Error::Spec(format!("modulus {given} does not match canonical {actual}")));
        }
    }
    let big = geometry.big_order();
    let x_values: Vec<u32> = match &spec.restriction {
        None => (0..big).collect(),
        Some(xs) => xs.clone(),
    };
    if x_values.is_empty() {
        return Err(Error::EmptyRestriction);
    }
    let mut x_pos = vec![None; big as usize];
    for (i, &x) in x_values.iter().enumerate() {
        geometry.check_big(x)?;
        if x_pos[x as usize].replace(i as u32).is_some() {
            return Err(Error::DuplicateRestriction(x));
        }
    }

    let num_points = geometry.num_points();
    let degree = x_values.len();
    let edges = num_points as u64 * degree as u64;
    if edges > opts.max_edges {
        return Err(Error::EdgeBudgetExceeded { edges, budget: opts.max_edges });
    }

    let q = geometry.base() as usize;
    let q2 = big as usize;
    let mut adjacency = vec![0u32; num_points * degree];
    adjacency.par_chunks_mut(degree).enumerate().for_each(|(idx, row)| {
        let p = geometry.point_at(idx);
        for (pos, (&x, slot)) in x_values.iter().zip(row.iter_mut()).enumerate() {
            let (y, z) = geometry.solve_line(p.a, p.b, p.c, x);
            let z = geometry.small_index(z).unwrap();
            *slot = ((pos * q2 + y as usize) * q + z) as u32;
        }
    });

    let mut spec = spec.clone();
    spec.modulus = geometry.modulus_description();
    Ok(IncidenceGraph { spec, geometry, x_values, x_pos, adjacency })
}

impl IncidenceGraph {
    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    /// The admissible `x` values, in line-index order.
    pub fn x_values(&self) -> &[u32] {
        &self.x_values
    }

    pub fn num_points(&self) -> usize {
        self.geometry.num_points()
    }

    pub fn num_lines(&self) -> usize {
        let q = self.geometry.base() as usize;
        self.x_values.len() * q * q * q
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.len()
    }

    /// Degree of every point, `|R|`.
    pub fn point_degree(&self) -> usize {
        self.x_values.len()
    }

    /// Degree of every line, `q`.
    pub fn line_degree(&self) -> usize {
        self.geometry.base() as usize
    }

    pub fn point(&self, idx: usize) -> Point {
        self.geometry.point_at(idx)
    }

    pub fn line(&self, idx: usize) -> Line {
        let q = self.geometry.base() as usize;
        let q2 = self.geometry.big_order() as usize;
        let per_x = q2 * q;
        let mut l = self.geometry.line_at(idx % per_x);
        l.x = self.x_values[idx / per_x];
        l
    }

    pub fn point_index(&self, p: &Point) -> Result<usize> {
        self.geometry.point_index(p)
    }

    /// Local index of `l`, or an error if `l.x` is outside the restriction.
    pub fn line_index(&self, l: &Line) -> Result<usize> {
        self.geometry.check_line(l)?;
        let pos = self.x_pos[l.x as usize].ok_or(Error::NotInDomain { value: l.x, domain: "restriction" })? as usize;
        let q = self.geometry.base() as usize;
        let q2 = self.geometry.big_order() as usize;
        Ok((pos * q2 + l.y as usize) * q + self.geometry.small_index(l.z).unwrap())
    }

    /// Local line indices incident to point `idx`, ordered by restriction position.
    pub fn point_neighbors(&self, idx: usize) -> &[u32] {
        let d = self.point_degree();
        &self.adjacency[idx * d..(idx + 1) * d]
    }

    /// Point indices on line `idx`, ordered by the canonical order of `a`.
    pub fn line_neighbors(&self, idx: usize) -> impl Iterator<Item = u32> + '_ {
        let l = self.line(idx);
        self.geometry.small_values().into_iter().map(move |a| {
            let (b, c) = self.geometry.solve_point(l.x, l.y, l.z, a);
            self.geometry.point_index_unchecked(&Point { a, b, c }) as u32
        })
    }

    pub fn incident(&self, p: &Point, l: &Line) -> Result<bool> {
        self.geometry.incident(p, l)
    }

    /// Line through `p` with first coordinate `x`; `x` must be admissible.
    pub fn line_through(&self, p: &Point, x: u32) -> Result<Line> {
        if !self.geometry.is_big(x) || self.x_pos[x as usize].is_none() {
            return Err(Error::NotInDomain { value: x, domain: "restriction" });
        }
        self.geometry.line_through(p, x)
    }

    pub fn point_on(&self, l: &Line, a: u32) -> Result<Point> {
        self.geometry.point_on(l, a)
    }

    /// Keeps the lines whose `x` lies in `xs` and every point.
    pub fn restrict_lines(&self, xs: &[u32]) -> Result<IncidenceGraph> {
        if xs.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        for &x in xs {
            if !self.geometry.is_big(x) || self.x_pos[x as usize].is_none() {
                return Err(Error::NotInDomain { value: x, domain: "restriction" });
            }
        }
        let spec = self.spec.clone().with_restriction(xs.to_vec());
        build_graph_with(&spec, BuildOptions { max_edges: u64::MAX })
    }

    /// Explicit two-sided adjacency (points on the left, lines on the right).
    pub fn to_bipartite(&self) -> Bipartite {
        let d = self.point_degree() as u32;
        Bipartite::from_left_adjacency(
            self.num_points(),
            self.num_lines(),
            (0..=self.num_points()).map(|i| i * d as usize).collect(),
            self.adjacency.clone(),
        )
    }
}

/// A bipartite graph in compressed adjacency form, both directions.
///
/// This is the common currency of the analysis routines: incidence graphs,
/// parity-check matrices and hand-made fixtures all convert into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartite {
    num_left: usize,
    num_right: usize,
    left_offsets: Vec<usize>,
    left_targets: Vec<u32>,
    right_offsets: Vec<usize>,
    right_targets: Vec<u32>,
}

impl Bipartite {
    /// Builds from an edge list. Duplicate edges are kept once.
    pub fn from_edges(num_left: usize, num_right: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut lists = vec![Vec::new(); num_left];
        for (l, r) in edges {
            assert!(l < num_left && r < num_right, "edge ({l}, {r}) out of range");
            lists[l].push(r as u32);
        }
        let mut offsets = Vec::with_capacity(num_left + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for mut list in lists {
            list.sort_unstable();
            list.dedup();
            targets.extend(list);
            offsets.push(targets.len());
        }
        Self::from_left_adjacency(num_left, num_right, offsets, targets)
    }

    fn from_left_adjacency(
        num_left: usize,
        num_right: usize,
        left_offsets: Vec<usize>,
        left_targets: Vec<u32>,
    ) -> Self {
        let mut counts = vec![0usize; num_right + 1];
        for &t in &left_targets {
            counts[t as usize + 1] += 1;
        }
        for j in 0..num_right {
            counts[j + 1] += counts[j];
        }
        let right_offsets = counts.clone();
        let mut fill = counts;
        let mut right_targets = vec![0u32; left_targets.len()];
        for i in 0..num_left {
            for &t in &left_targets[left_offsets[i]..left_offsets[i + 1]] {
                right_targets[fill[t as usize]] = i as u32;
                fill[t as usize] += 1;
            }
        }
        Bipartite { num_left, num_right, left_offsets, left_targets, right_offsets, right_targets }
    }

    pub fn num_left(&self) -> usize {
        self.num_left
    }

    pub fn num_right(&self) -> usize {
        self.num_right
    }

    pub fn num_vertices(&self) -> usize {
        self.num_left + self.num_right
    }

    pub fn num_edges(&self) -> usize {
        self.left_targets.len()
    }

    pub fn left(&self, i: usize) -> &[u32] {
        &self.left_targets[self.left_offsets[i]..self.left_offsets[i + 1]]
    }

    pub fn right(&self, j: usize) -> &[u32] {
        &self.right_targets[self.right_offsets[j]..self.right_offsets[j + 1]]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_left).flat_map(move |i| self.left(i).iter().map(move |&j| (i, j as usize)))
    }

    /// Copy without the edge `(left, right)`.
    pub fn without_edge(&self, left: usize, right: usize) -> Bipartite {
        Bipartite::from_edges(self.num_left, self.num_right, self.edges().filter(|&e| e != (left, right)))
    }

    /// Neighbours of unified vertex `v` (left vertices first, then right).
    #[inline]
    pub(crate) fn unified_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let (list, shift) =
            if v < self.num_left { (self.left(v), self.num_left) } else { (self.right(v - self.num_left), 0) };
        list.iter().map(move |&t| t as usize + shift)
    }
}

/// One connected component; indices are sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub points: Vec<u32>,
    pub lines: Vec<u32>,
}

impl Component {
    pub fn len(&self) -> usize {
        self.points.len() + self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn first_vertex(&self, num_left: usize) -> usize {
        match self.points.first() {
            Some(&p) => p as usize,
            None => num_left + self.lines[0] as usize,
        }
    }
}

/// Components ordered by size (descending), ties by smallest vertex index.
pub fn connected_components(g: &Bipartite) -> Vec<Component> {
    let n = g.num_vertices();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        let mut comp = Component { points: Vec::new(), lines: Vec::new() };
        while let Some(v) = queue.pop_front() {
            if v < g.num_left() {
                comp.points.push(v as u32);
            } else {
                comp.lines.push((v - g.num_left()) as u32);
            }
            for w in g.unified_neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.points.sort_unstable();
        comp.lines.sort_unstable();
        out.push(comp);
    }
    let nl = g.num_left();
    out.sort_by_key(|c| (std::cmp::Reverse(c.len()), c.first_vertex(nl)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: u32) -> Geometry {
        Geometry::new(Family::Ring, n).unwrap()
    }

    #[test]
    fn origin_meets_every_horizontal_line() {
        let g = ring(3);
        let o = Point { a: 0, b: 0, c: 0 };
        for x in 0..9 {
            assert!(g.incident(&o, &Line { x, y: 0, z: 0 }).unwrap());
            assert_eq!(g.line_through(&o, x).unwrap(), Line { x, y: 0, z: 0 });
        }
    }

    #[test]
    fn ring_examples() {
        let g = ring(3);
        let p = Point { a: 1, b: 0, c: 0 };
        assert!(g.incident(&p, &Line { x: 1, y: 1, z: 2 }).unwrap());
        assert!(!g.incident(&p, &Line { x: 1, y: 1, z: 0 }).unwrap());
        assert_eq!(g.line_through(&p, 2).unwrap(), Line { x: 2, y: 2, z: 1 });
        assert_eq!(g.point_on(&Line { x: 1, y: 1, z: 2 }, 1).unwrap(), p);
        assert_eq!(g.point_on(&Line { x: 4, y: 7, z: 2 }, 0).unwrap(), Point { a: 0, b: 7, c: 2 });
    }

    #[test]
    fn field_example() {
        let g = Geometry::new(Family::Field, 3).unwrap();
        // t encodes as 3 under t^2 + 1
        let p = Point { a: 1, b: 0, c: 0 };
        assert!(g.incident(&p, &Line { x: 3, y: 3, z: 0 }).unwrap());
    }

    #[test]
    fn domain_errors() {
        let g = ring(3);
        assert!(g.incident(&Point { a: 3, b: 0, c: 0 }, &Line { x: 0, y: 0, z: 0 }).is_err());
        assert!(g.line_through(&Point { a: 0, b: 0, c: 0 }, 9).is_err());
        let f = Geometry::new(Family::Field, 4).unwrap();
        // 2 encodes t, which is not in F_4 ⊂ F_16 (subfield is {0,1,6,7})
        assert_eq!(f.small_values(), vec![0, 1, 6, 7]);
        assert!(f.point_on(&Line { x: 0, y: 0, z: 0 }, 2).is_err());
    }

    #[test]
    fn line_through_and_point_on_exhaustive() {
        for geo in
            [ring(2), ring(3), Geometry::new(Family::Field, 2).unwrap(), Geometry::new(Family::Field, 3).unwrap()]
        {
            for pi in 0..geo.num_points() {
                let p = geo.point_at(pi);
                assert_eq!(geo.point_index(&p).unwrap(), pi);
                let mut seen = std::collections::HashSet::new();
                for x in 0..geo.big_order() {
                    let l = geo.line_through(&p, x).unwrap();
                    assert!(geo.incident(&p, &l).unwrap());
                    assert!(seen.insert(l));
                    assert_eq!(geo.point_on(&l, p.a).unwrap(), p);
                }
            }
            let q = geo.base() as usize;
            for li in 0..q.pow(5) {
                let l = geo.line_at(li);
                assert_eq!(geo.line_index(&l).unwrap(), li);
                let mut seen = std::collections::HashSet::new();
                for a in geo.small_values() {
                    let p = geo.point_on(&l, a).unwrap();
                    assert!(geo.incident(&p, &l).unwrap());
                    assert!(seen.insert(p));
                }
            }
        }
    }

    #[test]
    fn small_graph_counts() {
        let g = build_graph(&GraphSpec::ring(2)).unwrap();
        assert_eq!(g.num_points(), 16);
        assert_eq!(g.num_lines(), 32);
        assert_eq!(g.num_edges(), 64);
    }

    #[test]
    fn restriction_to_single_x() {
        let g = build_graph(&GraphSpec::ring(3)).unwrap();
        let r = g.restrict_lines(&[0]).unwrap();
        assert_eq!(r.num_lines(), 27);
        assert_eq!(r.point_degree(), 1);
        assert_eq!(r.num_points(), 81);
        let bip = r.to_bipartite();
        assert!((0..81).all(|i| bip.left(i).len() == 1));
        assert!((0..27).all(|j| bip.right(j).len() == 3));
    }

    #[test]
    fn restriction_errors() {
        let g = build_graph(&GraphSpec::ring(3)).unwrap();
        assert_eq!(g.restrict_lines(&[]).unwrap_err(), Error::EmptyRestriction);
        assert!(g.restrict_lines(&[9]).is_err());
        assert_eq!(
            build_graph(&GraphSpec::ring(3).with_restriction(vec![1, 1])).unwrap_err(),
            Error::DuplicateRestriction(1)
        );
        let r = g.restrict_lines(&[0, 1]).unwrap();
        assert!(r.restrict_lines(&[2]).is_err());
        assert!(r.line_through(&Point { a: 0, b: 0, c: 0 }, 5).is_err());
    }

    #[test]
    fn full_restriction_is_identity() {
        let g = build_graph(&GraphSpec::ring(3)).unwrap();
        let all: Vec<u32> = (0..9).collect();
        let r = g.restrict_lines(&all).unwrap();
        assert_eq!(r.to_bipartite(), g.to_bipartite());
    }

    #[test]
    fn local_line_indices_round_trip() {
        let g = build_graph(&GraphSpec::field(3).with_restriction(vec![5, 2, 7])).unwrap();
        for j in 0..g.num_lines() {
            let l = g.line(j);
            assert_eq!(g.line_index(&l).unwrap(), j);
            for p in g.line_neighbors(j) {
                assert!(g.point_neighbors(p as usize).contains(&(j as u32)));
            }
        }
    }

    #[test]
    fn edge_budget() {
        let err = build_graph_with(&GraphSpec::ring(4), BuildOptions { max_edges: 100 }).unwrap_err();
        assert_eq!(err, Error::EdgeBudgetExceeded { edges: 4096, budget: 100 });
    }

    #[test]
    fn modulus_is_recorded_and_checked() {
        let g = build_graph(&GraphSpec::field(3)).unwrap();
        assert_eq!(g.spec().modulus.as_deref(), Some("t^2+1"));
        let mut bad = GraphSpec::field(3);
        bad.modulus = Some("t^2+2t+2".into());
        assert!(matches!(build_graph(&bad), Err(Error::Spec(_))));
    }

    #[test]
    fn spec_json_round_trip() {
        let s = GraphSpec::ring(5).with_first_r(16).with_component(ComponentSelection::All);
        assert_eq!(GraphSpec::from_json(&s.to_json()).unwrap(), s);
        let minimal = GraphSpec::from_json(r#"{"family":"field","base":4}"#).unwrap();
        assert_eq!(minimal, GraphSpec::field(4));
        assert!(GraphSpec::from_json(r#"{"family":"torus","base":4}"#).is_err());
    }

    #[test]
    fn components_of_edgeless_graph() {
        let g = Bipartite::from_edges(5, 3, []);
        let comps = connected_components(&g);
        assert_eq!(comps.len(), 8);
        assert!(comps.iter().all(|c| c.len() == 1));
        assert_eq!(comps[0].points, vec![0]);
        assert_eq!(comps[5].lines, vec![0]);
    }

    #[test]
    fn components_ordering() {
        // {p0,l0}, {p1,l1,p2}, {l2}
        let g = Bipartite::from_edges(3, 3, [(0, 0), (1, 1), (2, 1)]);
        let comps = connected_components(&g);
        assert_eq!(comps[0], Component { points: vec![1, 2], lines: vec![1] });
        assert_eq!(comps[1], Component { points: vec![0], lines: vec![0] });
        assert_eq!(comps[2], Component { points: vec![], lines: vec![2] });
    }
}
