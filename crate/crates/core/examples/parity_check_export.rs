//! Parity-check matrix of F(Z_3, Z_9): rank, rates, and the alist text.
//!
//! Pass a path to write the alist there instead of printing its header.

use gq_ldpc::code::{export_alist, parity_check_from_graph, rate_report_for_graph};
use gq_ldpc::graph::{build_graph, GraphSpec};

fn main() -> gq_ldpc::Result<()> {
    let g = build_graph(&GraphSpec::ring(3))?;
    let h = parity_check_from_graph(&g)?;
    println!("H: {} x {}, {} ones", h.rows(), h.cols(), h.num_ones());
    println!("{}", rate_report_for_graph(&g, &h)?);

    let text = export_alist(&h);
    match std::env::args().nth(1) {
        Some(path) => {
            std::fs::write(&path, &text).expect("write alist");
            println!("wrote {path}");
        }
        None => text.lines().take(4).for_each(|l| println!("{}", &l[..l.len().min(60)])),
    }
    Ok(())
}
