//! Flooding-schedule message passing on the Tanner graph of `H`.
//!
//! Messages live on edges, stored check-major. Each iteration updates every
//! check, then every variable, then hard-decides and tests the syndrome.

use crate::code::ParityCheckMatrix;

pub const DEFAULT_MAX_ITER: usize = 50;
pub const DEFAULT_CLIP: f64 = 30.0;
pub const DEFAULT_NORMALIZATION: f64 = 0.75;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecoderKind {
    /// Log-domain sum-product with the tanh rule.
    SumProduct,
    /// Min-sum, check messages scaled by `normalization` in `(0, 1]`.
    MinSum { normalization: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoderConfig {
    pub kind: DecoderKind,
    pub max_iter: usize,
    /// Bound on message magnitudes.
    pub clip: f64,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig { kind: DecoderKind::SumProduct, max_iter: DEFAULT_MAX_ITER, clip: DEFAULT_CLIP }
    }
}

impl DecoderConfig {
    pub fn spa(max_iter: usize) -> Self {
        DecoderConfig { kind: DecoderKind::SumProduct, max_iter, ..Default::default() }
    }

    pub fn minsum(max_iter: usize, normalization: f64) -> Self {
        assert!(normalization > 0.0 && normalization <= 1.0, "normalization must lie in (0, 1]");
        DecoderConfig { kind: DecoderKind::MinSum { normalization }, max_iter, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeStatus {
    Converged,
    MaxIterations,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult {
    pub hard: Vec<u8>,
    pub status: DecodeStatus,
    pub iterations: usize,
}

impl DecodeResult {
    pub fn converged(&self) -> bool {
        self.status == DecodeStatus::Converged
    }
}

/// Reusable decoder for one parity-check matrix. Cheap to clone per thread.
#[derive(Clone, Debug)]
pub struct Decoder {
    cfg: DecoderConfig,
    n: usize,
    check_offsets: Vec<usize>,
    edge_var: Vec<u32>,
    var_offsets: Vec<usize>,
    var_edges: Vec<u32>,
    v2c: Vec<f64>,
    c2v: Vec<f64>,
    posterior: Vec<f64>,
    scratch: Vec<f64>,
}

impl Decoder {
    pub fn new(h: &ParityCheckMatrix, cfg: DecoderConfig) -> Self {
        assert!(cfg.max_iter >= 1, "max_iter must be at least 1");
        let n = h.cols();
        let mut check_offsets = Vec::with_capacity(h.rows() + 1);
        let mut edge_var = Vec::with_capacity(h.num_ones());
        check_offsets.push(0);
        for i in 0..h.rows() {
            edge_var.extend_from_slice(h.row(i));
            check_offsets.push(edge_var.len());
        }
        let mut var_offsets = vec![0usize; n + 1];
        for &v in &edge_var {
            var_offsets[v as usize + 1] += 1;
        }
        for v in 0..n {
            var_offsets[v + 1] += var_offsets[v];
        }
        let mut fill = var_offsets.clone();
        let mut var_edges = vec![0u32; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[fill[v as usize]] = e as u32;
            fill[v as usize] += 1;
        }
        let max_row = (0..h.rows()).map(|i| h.row(i).len()).max().unwrap_or(0);
        let edges = edge_var.len();
        Decoder {
            cfg,
            n,
            check_offsets,
            edge_var,
            var_offsets,
            var_edges,
            v2c: vec![0.0; edges],
            c2v: vec![0.0; edges],
            posterior: vec![0.0; n],
            scratch: vec![0.0; max_row],
        }
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.cfg
    }

    fn num_checks(&self) -> usize {
        self.check_offsets.len() - 1
    }

    /// Hard decisions from the posteriors; `true` when they form a codeword
    /// and no posterior is exactly zero (an undecided bit).
    fn decide(&self, hard: &mut [u8]) -> bool {
        let mut decided = true;
        for (h, &p) in hard.iter_mut().zip(&self.posterior) {
            *h = u8::from(p < 0.0);
            decided &= p != 0.0;
        }
        decided
            && (0..self.num_checks()).all(|c| {
                self.edge_var[self.check_offsets[c]..self.check_offsets[c + 1]]
                    .iter()
                    .fold(0u8, |acc, &v| acc ^ hard[v as usize])
                    == 0
            })
    }

    fn check_update_spa(&mut self) {
        let clip = self.cfg.clip;
        for c in 0..self.num_checks() {
            let (lo, hi) = (self.check_offsets[c], self.check_offsets[c + 1]);
            let deg = hi - lo;
            let t = &mut self.scratch[..deg];
            for (k, e) in (lo..hi).enumerate() {
                t[k] = (0.5 * self.v2c[e]).tanh();
            }
            // prefix products forward, suffix products folded in backward
            let mut prefix = 1.0;
            for (k, e) in (lo..hi).enumerate() {
                self.c2v[e] = prefix;
                prefix *= t[k];
            }
            let mut suffix = 1.0;
            for (k, e) in (lo..hi).enumerate().rev() {
                let prod = self.c2v[e] * suffix;
                self.c2v[e] = (2.0 * prod.atanh()).clamp(-clip, clip);
                suffix *= t[k];
            }
        }
    }

    fn check_update_minsum(&mut self, normalization: f64) {
        let clip = self.cfg.clip;
        for c in 0..self.num_checks() {
            let (lo, hi) = (self.check_offsets[c], self.check_offsets[c + 1]);
            let mut sign_neg = false;
            let mut min1 = f64::INFINITY;
            let mut min2 = f64::INFINITY;
            let mut argmin = usize::MAX;
            for e in lo..hi {
                let m = self.v2c[e];
                sign_neg ^= m < 0.0;
                let a = m.abs();
                if a < min1 {
                    min2 = min1;
                    min1 = a;
                    argmin = e;
                } else if a < min2 {
                    min2 = a;
                }
            }
            for e in lo..hi {
                let mag = if e == argmin { min2 } else { min1 };
                let neg = sign_neg ^ (self.v2c[e] < 0.0);
                let v = normalization * mag.min(clip);
                self.c2v[e] = if neg { -v } else { v };
            }
        }
    }

    fn variable_update(&mut self, llr: &[f64]) {
        let clip = self.cfg.clip;
        for (v, &l) in llr.iter().enumerate() {
            let edges = &self.var_edges[self.var_offsets[v]..self.var_offsets[v + 1]];
            let total = l + edges.iter().map(|&e| self.c2v[e as usize]).sum::<f64>();
            self.posterior[v] = total;
            for &e in edges {
                let e = e as usize;
                self.v2c[e] = (total - self.c2v[e]).clamp(-clip, clip);
            }
        }
    }

    pub fn decode(&mut self, llr: &[f64]) -> DecodeResult {
        assert_eq!(llr.len(), self.n, "LLR vector length must equal the block length");
        let clip = self.cfg.clip;
        let mut hard = vec![0u8; self.n];
        self.posterior.copy_from_slice(llr);
        if self.decide(&mut hard) {
            return DecodeResult { hard, status: DecodeStatus::Converged, iterations: 0 };
        }
        for (e, &v) in self.edge_var.iter().enumerate() {
            self.v2c[e] = llr[v as usize].clamp(-clip, clip);
        }
        for iter in 1..=self.cfg.max_iter {
            match self.cfg.kind {
                DecoderKind::SumProduct => self.check_update_spa(),
                DecoderKind::MinSum { normalization } => self.check_update_minsum(normalization),
            }
            self.variable_update(llr);
            if self.decide(&mut hard) {
                return DecodeResult { hard, status: DecodeStatus::Converged, iterations: iter };
            }
        }
        DecodeResult { hard, status: DecodeStatus::MaxIterations, iterations: self.cfg.max_iter }
    }
}

/// Sum-product decoding with default clipping.
pub fn decode_spa(h: &ParityCheckMatrix, llr: &[f64], max_iter: usize) -> DecodeResult {
    Decoder::new(h, DecoderConfig::spa(max_iter)).decode(llr)
}

/// Normalized min-sum decoding with default clipping.
pub fn decode_minsum(h: &ParityCheckMatrix, llr: &[f64], max_iter: usize, normalization: f64) -> DecodeResult {
    Decoder::new(h, DecoderConfig::minsum(max_iter, normalization)).decode(llr)
}
