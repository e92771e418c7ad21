//! Build F(F_3, F_9), look at a few vertices and walk their neighbourhoods.

use gq_ldpc::graph::{build_graph, GraphSpec};

fn main() -> gq_ldpc::Result<()> {
    let g = build_graph(&GraphSpec::field(3))?;
    println!("{} points, {} lines, {} edges", g.num_points(), g.num_lines(), g.num_edges());
    println!("point degree {}, line degree {}", g.point_degree(), g.line_degree());

    let p = g.point(10);
    let lines: Vec<String> = g.point_neighbors(10).iter().map(|&l| g.line(l as usize).to_string()).collect();
    println!("{p} lies on {}", lines.join(" "));

    let l = g.line(100);
    let points: Vec<String> = g.line_neighbors(100).map(|i| g.point(i as usize).to_string()).collect();
    println!("{l} contains {}", points.join(" "));

    let through = g.line_through(&p, 4)?;
    println!("line through {p} with x = 4: {through}, incident = {}", g.incident(&p, &through)?);
    println!("spec: {}", g.spec().to_json());
    Ok(())
}
