//! One noisy frame of the F(F_3, F_9) code through SPA and min-sum.

use gq_ldpc::channel::{awgn_frame, bpsk_modulate, llr_init, ChannelConfig, Decoder, DecoderConfig};
use gq_ldpc::code::{parity_check_from_graph, systematic_generator};
use gq_ldpc::graph::{build_graph, GraphSpec};

fn main() -> gq_ldpc::Result<()> {
    let g = build_graph(&GraphSpec::field(3))?;
    let h = parity_check_from_graph(&g)?;
    let enc = systematic_generator(&h)?;
    let msg: Vec<u8> = (0..enc.k()).map(|i| (i * 7 % 5 == 0) as u8).collect();
    let word = enc.encode(&msg)?;

    let channel = ChannelConfig::new(2.5, enc.k() as f64 / enc.n() as f64, 42);
    let rx = awgn_frame(&bpsk_modulate(&word), &channel, 0);
    let llr = llr_init(&rx, &channel);
    let raw = llr.iter().zip(&word).filter(|(l, &b)| (**l < 0.0) != (b == 1)).count();
    println!("N = {}, K = {}, channel errors: {raw}", enc.n(), enc.k());

    for cfg in [DecoderConfig::spa(50), DecoderConfig::minsum(50, 0.75)] {
        let r = Decoder::new(&h, cfg).decode(&llr);
        let errs = r.hard.iter().zip(&word).filter(|(a, b)| a != b).count();
        println!("{:?}: {:?} after {} iterations, {errs} bit errors", cfg.kind, r.status, r.iterations);
    }
    Ok(())
}
