//! BPSK over an AWGN channel, channel LLRs, and iterative decoding.
//!
//! Noise is drawn from ChaCha streams addressed by `(seed, point, frame)`, so
//! any frame can be regenerated independently of the others.

mod decoder;

pub use decoder::{
    decode_minsum, decode_spa, DecodeResult, DecodeStatus, Decoder, DecoderConfig, DecoderKind, DEFAULT_CLIP,
    DEFAULT_MAX_ITER, DEFAULT_NORMALIZATION,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

/// Magnitude used for LLRs when the channel is noiseless.
pub const NOISELESS_LLR: f64 = 30.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelConfig {
    /// `E_b/N_0` in dB; `+∞` means a noiseless channel.
    pub ebn0_db: f64,
    /// Code rate used to convert `E_b/N_0` into a noise variance.
    pub rate: f64,
    pub seed: u64,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, rate: f64, seed: u64) -> Self {
        ChannelConfig { ebn0_db, rate, seed }
    }

    /// `σ² = 1 / (2 · rate · 10^(Eb/N0 / 10))`
    pub fn noise_variance(&self) -> f64 {
        if self.ebn0_db == f64::INFINITY {
            return 0.0;
        }
        1.0 / (2.0 * self.rate * 10f64.powf(self.ebn0_db / 10.0))
    }
}

/// 0 ↦ +1, 1 ↦ −1.
pub fn bpsk_modulate(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| if b & 1 == 0 { 1.0 } else { -1.0 }).collect()
}

/// Sign slicer; ties go to 0.
pub fn hard_decision(values: &[f64]) -> Vec<u8> {
    values.iter().map(|&v| u8::from(v < 0.0)).collect()
}

/// Independent random stream for frame `frame` of sweep point `point`.
///
/// The key is expanded from `seed`, the ChaCha stream id is the point index
/// and the block counter starts at `frame · 2³²` words.
pub fn frame_rng(seed: u64, point: u64, frame: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(point);
    rng.set_word_pos((frame as u128) << 32);
    rng
}

/// Adds i.i.d. `N(0, σ²)` samples drawn from `rng`.
pub fn awgn<R: Rng + ?Sized>(signal: &[f64], cfg: &ChannelConfig, rng: &mut R) -> Vec<f64> {
    let sigma = cfg.noise_variance().sqrt();
    signal
        .iter()
        .map(|&s| {
            let n: f64 = rng.sample(StandardNormal);
            s + sigma * n
        })
        .collect()
}

/// [`awgn`] using the stream of frame `frame` (point 0) of `cfg.seed`.
pub fn awgn_frame(signal: &[f64], cfg: &ChannelConfig, frame: u64) -> Vec<f64> {
    awgn(signal, cfg, &mut frame_rng(cfg.seed, 0, frame))
}

/// `2r/σ²`, positive favouring bit 0. A noiseless channel gives `±30`.
pub fn llr_init(received: &[f64], cfg: &ChannelConfig) -> Vec<f64> {
    let var = cfg.noise_variance();
    if var == 0.0 {
        return received.iter().map(|&r| if r == 0.0 { 0.0 } else { NOISELESS_LLR.copysign(r) }).collect();
    }
    received.iter().map(|&r| 2.0 * r / var).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulation() {
        assert_eq!(bpsk_modulate(&[0, 0, 0]), vec![1.0, 1.0, 1.0]);
        assert_eq!(bpsk_modulate(&[1]), vec![-1.0]);
        let bits = [0, 1, 1, 0, 1];
        assert_eq!(hard_decision(&bpsk_modulate(&bits)), bits);
    }

    #[test]
    fn noiseless_channel_is_identity() {
        let cfg = ChannelConfig::new(f64::INFINITY, 0.5, 1);
        assert_eq!(cfg.noise_variance(), 0.0);
        let s = bpsk_modulate(&[0, 1, 0]);
        assert_eq!(awgn_frame(&s, &cfg, 3), s);
        assert_eq!(llr_init(&s, &cfg), vec![30.0, -30.0, 30.0]);
    }

    #[test]
    fn llr_formula() {
        // σ² = 0.5 ⇔ rate 1, 0 dB
        let cfg = ChannelConfig::new(0.0, 1.0, 0);
        assert!((cfg.noise_variance() - 0.5).abs() < 1e-15);
        assert_eq!(llr_init(&[1.0, 0.0], &cfg), vec![4.0, 0.0]);
        let r = [0.3, -1.2, 0.7];
        let scaled: Vec<f64> = r.iter().map(|v| v * 2.5).collect();
        let a = llr_init(&r, &cfg);
        let b = llr_init(&scaled, &cfg);
        for (x, y) in a.iter().zip(&b) {
            assert!((y - 2.5 * x).abs() < 1e-12);
        }
        assert_eq!(hard_decision(&a), hard_decision(&b));
    }

    #[test]
    fn noise_statistics() {
        let cfg = ChannelConfig::new(2.0, 2.0 / 3.0, 99);
        let var = cfg.noise_variance();
        let n = 1_000_000;
        let noise = awgn_frame(&vec![0.0; n], &cfg, 0);
        let mean = noise.iter().sum::<f64>() / n as f64;
        let sample_var = noise.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!(mean.abs() < 5.0 * var.sqrt() / (n as f64).sqrt(), "mean {mean}");
        assert!((sample_var / var - 1.0).abs() < 0.02, "var {sample_var} vs {var}");
    }

    #[test]
    fn streams_are_addressable() {
        let a: Vec<u64> = (0..4).map(|_| frame_rng(5, 1, 7).random()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let x: u64 = frame_rng(5, 1, 7).random();
        let y: u64 = frame_rng(5, 1, 8).random();
        let z: u64 = frame_rng(5, 2, 7).random();
        let w: u64 = frame_rng(6, 1, 7).random();
        assert!(x != y && x != z && x != w);
    }
}
