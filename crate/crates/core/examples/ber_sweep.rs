//! BER/FER sweep of the F(F_3, F_9) code against uncoded BPSK, as CSV.

use gq_ldpc::code::parity_check_from_graph;
use gq_ldpc::graph::{build_graph, GraphSpec};
use gq_ldpc::sim::{emit_csv, run_sweep, EbN0Grid, SimCode, SweepConfig};

fn main() -> gq_ldpc::Result<()> {
    let g = build_graph(&GraphSpec::field(3))?;
    let code = SimCode::new(parity_check_from_graph(&g)?)?;
    let grid: EbN0Grid = "0:1:5".parse()?;
    let cfg = SweepConfig { grid: grid.values(), max_frames: 5000, seed: 1, ..Default::default() };

    println!("# coded, rate {:.4}", code.rate());
    print!("{}", emit_csv(&run_sweep(&code, &cfg)?));
    println!("# uncoded");
    print!("{}", emit_csv(&run_sweep(&SimCode::uncoded(code.n()), &cfg)?));
    Ok(())
}
