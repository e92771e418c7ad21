//! LDPC codes from the point/line incidence graphs `F(F_q, F_q²)` and
//! `F(Z_n, Z_n²)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: arithmetic in `F_q²` (with its subfield `F_q`) and in `Z_n²` / `Z_n`.
//! - [`graph`]: points, lines, the incidence relation, full and line-restricted graphs.
//! - [`analysis`]: girth, density, bi-regularity and 4-cycle checks.
//! - [`code`]: parity-check matrices, GF(2) rank, systematic encoding, alist I/O.
//! - [`channel`]: BPSK over AWGN and iterative (sum-product / min-sum) decoding.
//! - [`sim`]: deterministic, parallel Monte-Carlo BER sweeps with CSV output.
//! - [`cli`]: the command-line front end used by the `gq-ldpc` binary.
//!
//! Runnable walkthroughs for each capability live in the crate's `examples/`
//! directory (`cargo run --release --example <name>`).

pub mod algebra;
pub mod analysis;
pub mod channel;
pub mod cli;
pub mod code;
mod error;
pub mod graph;
pub mod sim;

pub use error::{Error, Result};
