//! Restrict F(Z_5, Z_25) to lines with x in the first 16 values.

use gq_ldpc::analysis::{check_biregular, girth};
use gq_ldpc::code::{parity_check_for_spec, rate_report_for_graph};
use gq_ldpc::graph::{build_graph, connected_components, GraphSpec};

fn main() -> gq_ldpc::Result<()> {
    let full = build_graph(&GraphSpec::ring(5))?;
    let g = full.restrict_lines(&(0..16).collect::<Vec<_>>())?;
    let bp = g.to_bipartite();
    let bidegree = check_biregular(&bp).map_err(|e| gq_ldpc::Error::Spec(e.to_string()))?;
    println!("{} points, {} lines, bidegree {bidegree}", g.num_points(), g.num_lines());
    println!("girth {} (full graph {})", girth(&bp), girth(&full.to_bipartite()));
    println!("components: {:?}", connected_components(&bp).iter().map(|c| c.len()).collect::<Vec<_>>());

    let h = parity_check_for_spec(&g)?;
    println!("{}", rate_report_for_graph(&g, &h)?);
    Ok(())
}
