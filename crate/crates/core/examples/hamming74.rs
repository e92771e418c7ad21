//! The [7,4] Hamming code: generator, codebook, minimum distance, decoding.

use gq_ldpc::channel::decode_spa;
use gq_ldpc::code::{gf2_rank, hamming_distance, syndrome, systematic_generator, ParityCheckMatrix};

#[rustfmt::skip]
const H: [u8; 21] = [
    1, 1, 1, 0, 1, 0, 0,
    1, 0, 1, 1, 0, 1, 0,
    1, 1, 0, 1, 0, 0, 1,
];

fn main() -> gq_ldpc::Result<()> {
    let h = ParityCheckMatrix::from_dense(3, 7, &H);
    let g = systematic_generator(&h)?;
    println!("rank {}, K {}, information columns {:?}", gf2_rank(&h)?, g.k(), &g.permutation()[..g.k()]);

    let book: Vec<Vec<u8>> =
        (0..16u8).map(|v| g.encode(&(0..4).map(|i| v >> i & 1).collect::<Vec<_>>())).collect::<Result<_, _>>()?;
    for c in &book {
        println!("{c:?}");
    }
    let dmin = book
        .iter()
        .flat_map(|a| book.iter().map(move |b| (a, b)))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| hamming_distance(a, b).unwrap())
        .min();
    println!("minimum distance {dmin:?}");

    let received = [1u8, 0, 0, 0, 0, 0, 0];
    println!("syndrome of {received:?}: {:?}", syndrome(&h, &received)?);
    let llr: Vec<f64> = received.iter().map(|&b| if b == 0 { 2.0 } else { -2.0 }).collect();
    let r = decode_spa(&h, &llr, 50);
    println!("decoded {:?} in {} iterations ({:?})", r.hard, r.iterations, r.status);
    Ok(())
}
