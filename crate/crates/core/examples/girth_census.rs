//! Vertex and edge counts, bidegree, density and exact girth for small bases.

use gq_ldpc::analysis::{GirthMode, GraphStats};
use gq_ldpc::graph::{build_graph, Family, GraphSpec};

fn main() -> gq_ldpc::Result<()> {
    println!(
        "{:<6} {:>4} {:>7} {:>7} {:>8} {:>10} {:>6} {:>5}",
        "family", "base", "|V|", "|E|", "bidegree", "density", "girth", "comps"
    );
    for base in 2..=5 {
        for family in [Family::Field, Family::Ring] {
            let g = build_graph(&GraphSpec::new(family, base))?;
            let s = GraphStats::compute(&g.to_bipartite(), GirthMode::Exact)?;
            println!(
                "{:<6} {:>4} {:>7} {:>7} {:>8} {:>10} {:>6} {:>5}",
                family.to_string(),
                base,
                s.num_vertices(),
                s.num_edges,
                s.bidegree.map_or("irregular".into(), |b| b.to_string()),
                gq_ldpc::analysis::format_significant(&s.density, 3),
                s.girth.map_or("-".into(), |g| g.to_string()),
                s.components
            );
        }
    }
    Ok(())
}
