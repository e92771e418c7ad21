//! Monte-Carlo BER/FER sweeps: encode, BPSK, AWGN, decode, count.
//!
//! Every frame draws its message and noise from its own stream
//! `(seed, point index, frame index)`. Frames are decoded in parallel batches
//! and folded in frame order, so the stopping point and every count are the
//! same for any thread count.

use std::fmt::Write;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{awgn, bpsk_modulate, frame_rng, llr_init, ChannelConfig, Decoder, DecoderConfig};
use crate::code::{gf2_rank, systematic_generator, ParityCheckMatrix, SystematicGenerator};
use crate::{Error, Result};

pub const DEFAULT_MAX_FRAMES: u64 = 100_000;
pub const DEFAULT_MIN_BIT_ERRORS: u64 = 100;
const BATCH: u64 = 256;

pub const CSV_HEADER: &str = "ebn0_db,frames,bits,bit_errors,ber,frame_errors,fer,avg_iters";

/// Inclusive `start:step:stop` grid in dB.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EbN0Grid {
    pub start: f64,
    pub step: f64,
    pub stop: f64,
}

impl EbN0Grid {
    pub fn single(v: f64) -> Self {
        EbN0Grid { start: v, step: 1.0, stop: v }
    }

    /// Grid values; `stop` is included when within half a step.
    pub fn values(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut i = 0u32;
        loop {
            let v = self.start + i as f64 * self.step;
            if v > self.stop + self.step / 2.0 {
                break;
            }
            out.push(v);
            i += 1;
        }
        out
    }
}

impl FromStr for EbN0Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num =
            |t: &str| t.trim().parse::<f64>().map_err(|_| Error::Sweep(format!("bad number {t:?} in grid {s:?}")));
        let grid = match parts[..] {
            [v] => EbN0Grid::single(num(v)?),
            [a, b, c] => EbN0Grid { start: num(a)?, step: num(b)?, stop: num(c)? },
            _ => return Err(Error::Sweep(format!("grid must be start:step:stop, got {s:?}"))),
        };
        if !grid.start.is_finite()
            || !grid.stop.is_finite()
            || grid.step.is_nan()
            || grid.step <= 0.0
            || grid.step.is_infinite()
        {
            return Err(Error::Sweep("grid needs finite bounds and a positive step".into()));
        }
        if grid.stop < grid.start {
            return Err(Error::Sweep("grid stop lies below start".into()));
        }
        Ok(grid)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MessageSource {
    #[default]
    Random,
    AllZero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub grid: Vec<f64>,
    pub max_frames: u64,
    /// Stop a point once this many bit errors have accumulated; 0 disables.
    pub min_bit_errors: u64,
    pub decoder: DecoderConfig,
    pub seed: u64,
    pub source: MessageSource,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            grid: vec![0.0],
            max_frames: DEFAULT_MAX_FRAMES,
            min_bit_errors: DEFAULT_MIN_BIT_ERRORS,
            decoder: DecoderConfig::default(),
            seed: 0,
            source: MessageSource::Random,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::Sweep("empty Eb/N0 grid".into()));
        }
        if self.max_frames == 0 {
            return Err(Error::Sweep("max_frames must be at least 1".into()));
        }
        if self.grid.iter().any(|v| v.is_nan()) {
            return Err(Error::Sweep("grid contains NaN".into()));
        }
        Ok(())
    }
}

/// A code ready for simulation: `H`, an encoder and its true rate.
#[derive(Clone, Debug)]
pub struct SimCode {
    h: ParityCheckMatrix,
    generator: SystematicGenerator,
    rate: f64,
}

impl SimCode {
    pub fn new(h: ParityCheckMatrix) -> Result<Self> {
        let generator = systematic_generator(&h)?;
        let rank = gf2_rank(&h)?;
        let rate = (h.cols() - rank) as f64 / h.cols() as f64;
        Ok(SimCode { h, generator, rate })
    }

    /// Uncoded BPSK over `n` bits: no checks, hard decisions pass through.
    pub fn uncoded(n: usize) -> Self {
        Self::new(ParityCheckMatrix::empty(n)).expect("uncoded code is valid")
    }

    pub fn h(&self) -> &ParityCheckMatrix {
        &self.h
    }

    pub fn generator(&self) -> &SystematicGenerator {
        &self.generator
    }

    /// `K / N` from the GF(2) rank.
    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BerPoint {
    pub ebn0_db: f64,
    pub frames: u64,
    pub bits: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub frame_errors: u64,
    pub fer: f64,
    pub avg_iterations: f64,
}

impl BerPoint {
    /// Binomial standard error of the BER estimate.
    pub fn std_error(&self) -> f64 {
        if self.bits == 0 {
            return 0.0;
        }
        (self.ber * (1.0 - self.ber) / self.bits as f64).sqrt()
    }
}

#[derive(Clone, Copy, Default)]
struct FrameOutcome {
    bit_errors: u64,
    iterations: u64,
}

fn run_frame(
    code: &SimCode,
    cfg: &SweepConfig,
    channel: &ChannelConfig,
    point: u64,
    frame: u64,
    decoder: &mut Decoder,
) -> FrameOutcome {
    let mut rng = frame_rng(cfg.seed, point, frame);
    let k = code.generator.k();
    let msg: Vec<u8> = match cfg.source {
        MessageSource::Random => (0..k).map(|_| rng.random::<bool>() as u8).collect(),
        MessageSource::AllZero => vec![0; k],
    };
    let codeword = code.generator.encode(&msg).expect("message has length K");
    let rx = awgn(&bpsk_modulate(&codeword), channel, &mut rng);
    let result = decoder.decode(&llr_init(&rx, channel));
    let bit_errors = result.hard.iter().zip(&codeword).filter(|(a, b)| a != b).count() as u64;
    FrameOutcome { bit_errors, iterations: result.iterations as u64 }
}

/// Simulates one grid point. `point` selects the random streams.
pub fn run_point(code: &SimCode, cfg: &SweepConfig, point: u64, ebn0_db: f64) -> BerPoint {
    let channel = ChannelConfig::new(ebn0_db, code.rate, cfg.seed);
    let template = Decoder::new(&code.h, cfg.decoder);
    let n = code.n() as u64;

    let (mut frames, mut bit_errors, mut frame_errors, mut iterations) = (0u64, 0u64, 0u64, 0u64);
    let mut next = 0u64;
    'batches: while next < cfg.max_frames {
        let end = (next + BATCH).min(cfg.max_frames);
        let outcomes: Vec<FrameOutcome> = (next..end)
            .into_par_iter()
            .map_init(|| template.clone(), |dec, f| run_frame(code, cfg, &channel, point, f, dec))
            .collect();
        for o in outcomes {
            frames += 1;
            bit_errors += o.bit_errors;
            frame_errors += u64::from(o.bit_errors > 0);
            iterations += o.iterations;
            if cfg.min_bit_errors > 0 && bit_errors >= cfg.min_bit_errors {
                break 'batches;
            }
        }
        next = end;
    }

    let bits = frames * n;
    BerPoint {
        ebn0_db,
        frames,
        bits,
        bit_errors,
        ber: bit_errors as f64 / bits as f64,
        frame_errors,
        fer: frame_errors as f64 / frames as f64,
        avg_iterations: iterations as f64 / frames as f64,
    }
}

/// One [`BerPoint`] per grid value, in ascending Eb/N0 order.
pub fn run_sweep(code: &SimCode, cfg: &SweepConfig) -> Result<Vec<BerPoint>> {
    cfg.validate()?;
    let mut grid = cfg.grid.clone();
    grid.sort_by(f64::total_cmp);
    Ok(grid.iter().enumerate().map(|(i, &e)| run_point(code, cfg, i as u64, e)).collect())
}

fn fmt_ebn0(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.2}")
    }
}

/// CSV with a fixed header; BER and FER in scientific notation (6 significant digits).
pub fn emit_csv(points: &[BerPoint]) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{:.5e},{},{:.5e},{:.3}",
            fmt_ebn0(p.ebn0_db),
            p.frames,
            p.bits,
            p.bit_errors,
            p.ber,
            p.frame_errors,
            p.fer,
            p.avg_iterations
        )
        .unwrap();
    }
    out
}

/// Reads back the output of [`emit_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<BerPoint>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::Sweep("missing CSV header".into()));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            let bad = || Error::Sweep(format!("malformed CSV row {line:?}"));
            if f.len() != 8 {
                return Err(bad());
            }
            let int = |s: &str| s.parse::<u64>().map_err(|_| bad());
            let real = |s: &str| s.parse::<f64>().map_err(|_| bad());
            Ok(BerPoint {
                ebn0_db: real(f[0])?,
                frames: int(f[1])?,
                bits: int(f[2])?,
                bit_errors: int(f[3])?,
                ber: real(f[4])?,
                frame_errors: int(f[5])?,
                fer: real(f[6])?,
                avg_iterations: real(f[7])?,
            })
        })
        .collect()
}
