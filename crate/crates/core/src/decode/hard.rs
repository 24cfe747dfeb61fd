//! Gallager A/B hard-decision message passing.

use super::{Algorithm, DecodeError, DecodeOutcome, DecoderConfig};
use crate::graph::ParityCheckMatrix;

/// Reusable Gallager A/B decoder with per-iteration access to its state.
///
/// Messages live on edges numbered variable-major. A variable node sends the
/// complement of its channel bit on an edge when at least `t(d_v)` of the
/// other incoming check messages disagree with the channel bit. The hard
/// decision is a majority vote over the channel bit and all `d_v` check
/// messages, ties going to the channel bit.
#[derive(Debug, Clone)]
pub struct HardDecoder {
    n: usize,
    var_ptr: Vec<usize>,
    edge_var: Vec<usize>,
    check_ptr: Vec<usize>,
    check_edges: Vec<usize>,
    flip_at: Vec<u32>,
    max_iterations: usize,
    channel: Vec<u8>,
    v2c: Vec<u8>,
    c2v: Vec<u8>,
    decision: Vec<u8>,
    iterations: usize,
}

impl HardDecoder {
    pub fn new(h: &ParityCheckMatrix, config: &DecoderConfig) -> Result<Self, DecodeError> {
        config.validate()?;
        if !config.algorithm.is_hard_decision() {
            return Err(DecodeError::Config(format!(
                "{} is not a hard-decision decoder",
                config.algorithm
            )));
        }
        let threshold = config.effective_threshold();
        let mut var_ptr = vec![0];
        let mut edge_var = Vec::with_capacity(h.nnz());
        let mut edge_check = Vec::with_capacity(h.nnz());
        let mut flip_at = Vec::with_capacity(h.n());
        for (v, checks) in h.cols().iter().enumerate() {
            for &c in checks {
                edge_var.push(v);
                edge_check.push(c);
            }
            var_ptr.push(edge_var.len());
            flip_at.push(threshold.for_degree(checks.len()) as u32);
        }
        let mut check_lists = vec![Vec::new(); h.m()];
        for (e, &c) in edge_check.iter().enumerate() {
            check_lists[c].push(e);
        }
        let mut check_ptr = vec![0];
        let mut check_edges = Vec::with_capacity(h.nnz());
        for list in check_lists {
            check_edges.extend(list);
            check_ptr.push(check_edges.len());
        }
        let e = edge_var.len();
        Ok(HardDecoder {
            n: h.n(),
            var_ptr,
            edge_var,
            check_ptr,
            check_edges,
            flip_at,
            max_iterations: config.max_iterations,
            channel: vec![0; h.n()],
            v2c: vec![0; e],
            c2v: vec![0; e],
            decision: vec![0; h.n()],
            iterations: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }

    /// Loads a received word; messages start as the channel values.
    pub fn init(&mut self, received: &[u8]) -> Result<(), DecodeError> {
        if received.len() != self.n {
            return Err(DecodeError::LengthMismatch {
                expected: self.n,
                found: received.len(),
            });
        }
        for (dst, &b) in self.channel.iter_mut().zip(received) {
            *dst = b & 1;
        }
        self.init_from_channel();
        Ok(())
    }

    /// Loads a received word given by the positions of its ones.
    pub fn init_support(&mut self, ones: &[usize]) {
        self.channel.fill(0);
        for &v in ones {
            self.channel[v] = 1;
        }
        self.init_from_channel();
    }

    fn init_from_channel(&mut self) {
        for (e, &v) in self.edge_var.iter().enumerate() {
            self.v2c[e] = self.channel[v];
        }
        self.c2v.fill(0);
        self.decision.copy_from_slice(&self.channel);
        self.iterations = 0;
    }

    /// One flooding iteration: checks, then variables, then the hard decision.
    pub fn step(&mut self) {
        for c in 0..self.check_ptr.len() - 1 {
            let edges = &self.check_edges[self.check_ptr[c]..self.check_ptr[c + 1]];
            let parity = edges.iter().fold(0u8, |acc, &e| acc ^ self.v2c[e]);
            for &e in edges {
                self.c2v[e] = parity ^ self.v2c[e];
            }
        }
        for v in 0..self.n {
            let (lo, hi) = (self.var_ptr[v], self.var_ptr[v + 1]);
            let ch = self.channel[v];
            let disagree: u32 = self.c2v[lo..hi].iter().map(|&m| u32::from(m != ch)).sum();
            let t = self.flip_at[v];
            for e in lo..hi {
                let ext = disagree - u32::from(self.c2v[e] != ch);
                self.v2c[e] = if ext >= t { ch ^ 1 } else { ch };
            }
            let dv = (hi - lo) as u32;
            self.decision[v] = if 2 * disagree > dv + 1 { ch ^ 1 } else { ch };
        }
        self.iterations += 1;
    }

    pub fn syndrome_is_zero(&self) -> bool {
        (0..self.check_ptr.len() - 1).all(|c| {
            self.check_edges[self.check_ptr[c]..self.check_ptr[c + 1]]
                .iter()
                .fold(0u8, |acc, &e| acc ^ self.decision[self.edge_var[e]])
                == 0
        })
    }

    /// Iterates until the decision satisfies every check or the cap is hit.
    pub fn run(&mut self) -> bool {
        if self.syndrome_is_zero() {
            return true;
        }
        while self.iterations < self.max_iterations {
            self.step();
            if self.syndrome_is_zero() {
                return true;
            }
        }
        false
    }

    pub fn decision(&self) -> &[u8] {
        &self.decision
    }

    /// Variable-to-check messages, the full decoder state between iterations.
    pub fn messages(&self) -> &[u8] {
        &self.v2c
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Decodes a word and reports the outcome.
    pub fn decode(&mut self, received: &[u8]) -> Result<DecodeOutcome, DecodeError> {
        self.init(received)?;
        let success = self.run();
        Ok(DecodeOutcome {
            success,
            iterations: self.iterations,
            decision: self.decision.clone(),
        })
    }

    /// Whether the word whose ones sit at `ones` fails to decode to all-zero.
    pub fn fails_on_support(&mut self, ones: &[usize]) -> bool {
        self.init_support(ones);
        !self.run() || self.decision.iter().any(|&b| b != 0)
    }
}

fn run_hard(
    h: &ParityCheckMatrix,
    received: &[u8],
    config: &DecoderConfig,
    algorithm: Algorithm,
) -> Result<DecodeOutcome, DecodeError> {
    let config = DecoderConfig {
        algorithm,
        ..config.clone()
    };
    HardDecoder::new(h, &config)?.decode(received)
}

/// Gallager A: a variable flips its outgoing bit only when every extrinsic
/// check message disagrees with the channel bit.
pub fn gallager_a_decode(
    h: &ParityCheckMatrix,
    received: &[u8],
    config: &DecoderConfig,
) -> Result<DecodeOutcome, DecodeError> {
    run_hard(h, received, config, Algorithm::GallagerA)
}

/// Gallager B with the flip rule in `config.threshold`.
pub fn gallager_b_decode(
    h: &ParityCheckMatrix,
    received: &[u8],
    config: &DecoderConfig,
) -> Result<DecodeOutcome, DecodeError> {
    run_hard(h, received, config, Algorithm::GallagerB)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decode::FlipThreshold;

    fn hamming74() -> ParityCheckMatrix {
        ParityCheckMatrix::from_dense(&[
            vec![1, 0, 1, 0, 1, 0, 1],
            vec![0, 1, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 1],
        ])
        .unwrap()
    }

    #[test]
    fn codeword_needs_no_iterations() {
        let h = hamming74();
        let cw = [1, 1, 1, 0, 0, 0, 0];
        assert!(h.is_codeword(&cw));
        let out = gallager_b_decode(&h, &cw, &DecoderConfig::gallager_b()).unwrap();
        assert!(out.success);
        assert_eq!(out.iterations, 0);
        assert_eq!(out.decision, cw);
        let zero = gallager_a_decode(&h, &[0; 7], &DecoderConfig::gallager_a()).unwrap();
        assert!(zero.success && zero.iterations == 0);
    }

    #[test]
    fn length_mismatch() {
        assert_eq!(
            gallager_b_decode(&hamming74(), &[0; 6], &DecoderConfig::gallager_b()).unwrap_err(),
            DecodeError::LengthMismatch {
                expected: 7,
                found: 6
            }
        );
    }

    #[test]
    fn two_disagreeing_extrinsics_flip_a_degree_three_variable() {
        // b0 has degree 3 with checks c0, c1, c2; an error on b0 alone makes
        // all three checks disagree, so every outgoing message is flipped.
        let h =
            ParityCheckMatrix::from_dense(&[vec![1, 1, 0, 0], vec![1, 0, 1, 0], vec![1, 0, 0, 1]])
                .unwrap();
        let mut dec = HardDecoder::new(&h, &DecoderConfig::gallager_b()).unwrap();
        dec.init(&[1, 0, 0, 0]).unwrap();
        dec.step();
        assert_eq!(&dec.messages()[..3], &[0, 0, 0]);
        assert_eq!(dec.decision(), &[0, 0, 0, 0]);
    }

    #[test]
    fn gallager_a_matches_b_with_all_extrinsic_threshold() {
        let h = hamming74();
        let mut b_cfg = DecoderConfig::gallager_b();
        b_cfg.threshold = FlipThreshold::AllExtrinsic;
        for word in 0u32..128 {
            let r: Vec<u8> = (0..7).map(|i| (word >> i & 1) as u8).collect();
            let a = gallager_a_decode(&h, &r, &DecoderConfig::gallager_a()).unwrap();
            let b = gallager_b_decode(&h, &r, &b_cfg).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn degree_one_check_sends_zero() {
        let h = ParityCheckMatrix::from_dense(&[vec![1, 1], vec![0, 1]]).unwrap();
        let mut dec = HardDecoder::new(&h, &DecoderConfig::gallager_b()).unwrap();
        dec.init(&[0, 1]).unwrap();
        dec.step();
        assert!(!dec.syndrome_is_zero() || dec.decision() == [0, 0]);
    }

    #[test]
    fn rejects_soft_algorithm() {
        assert!(HardDecoder::new(&hamming74(), &DecoderConfig::min_sum()).is_err());
    }
}
