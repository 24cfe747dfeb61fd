use super::{Algorithm, DecodeError, DecodeOutcome, DecoderConfig};
use crate::graph::ParityCheckMatrix;

/// Flooding min-sum decoder over LLRs (positive favours bit 0).
#[derive(Debug, Clone)]
pub struct MinSumDecoder {
    n: usize,
    var_ptr: Vec<usize>,
    edge_var: Vec<usize>,
    check_ptr: Vec<usize>,
    check_edges: Vec<usize>,
    scaling: f64,
    max_iterations: usize,
}

impl MinSumDecoder {
    pub fn new(h: &ParityCheckMatrix, config: &DecoderConfig) -> Result<Self, DecodeError> {
        config.validate()?;
        if config.algorithm != Algorithm::MinSum {
            return Err(DecodeError::Config(format!(
                "{} is not min-sum",
                config.algorithm
            )));
        }
        let mut var_ptr = vec![0];
        let mut edge_var = Vec::with_capacity(h.nnz());
        let mut check_lists = vec![Vec::new(); h.m()];
        for (v, checks) in h.cols().iter().enumerate() {
            for &c in checks {
                check_lists[c].push(edge_var.len());
                edge_var.push(v);
            }
            var_ptr.push(edge_var.len());
        }
        let mut check_ptr = vec![0];
        let mut check_edges = Vec::with_capacity(h.nnz());
        for list in check_lists {
            check_edges.extend(list);
            check_ptr.push(check_edges.len());
        }
        Ok(MinSumDecoder {
            n: h.n(),
            var_ptr,
            edge_var,
            check_ptr,
            check_edges,
            scaling: config.scaling,
            max_iterations: config.max_iterations,
        })
    }

    fn syndrome_is_zero(&self, decision: &[u8]) -> bool {
        (0..self.check_ptr.len() - 1).all(|c| {
            self.check_edges[self.check_ptr[c]..self.check_ptr[c + 1]]
                .iter()
                .fold(0u8, |acc, &e| acc ^ decision[self.edge_var[e]])
                == 0
        })
    }

    pub fn decode(&self, llr: &[f64]) -> Result<DecodeOutcome, DecodeError> {
        if llr.len() != self.n {
            return Err(DecodeError::LengthMismatch {
                expected: self.n,
                found: llr.len(),
            });
        }
        if let Some(i) = llr.iter().position(|x| !x.is_finite()) {
            return Err(DecodeError::NonFinite(i));
        }
        let hard = |x: f64| u8::from(x < 0.0);
        let mut decision: Vec<u8> = llr.iter().map(|&x| hard(x)).collect();
        if self.syndrome_is_zero(&decision) {
            return Ok(DecodeOutcome {
                success: true,
                iterations: 0,
                decision,
            });
        }
        let mut v2c: Vec<f64> = self.edge_var.iter().map(|&v| llr[v]).collect();
        let mut c2v = vec![0.0f64; v2c.len()];
        for it in 1..=self.max_iterations {
            for c in 0..self.check_ptr.len() - 1 {
                let edges = &self.check_edges[self.check_ptr[c]..self.check_ptr[c + 1]];
                if edges.len() < 2 {
                    for &e in edges {
                        c2v[e] = 0.0;
                    }
                    continue;
                }
                let mut negative = false;
                let (mut min1, mut min2, mut arg) = (f64::INFINITY, f64::INFINITY, usize::MAX);
                for &e in edges {
                    let m = v2c[e];
                    negative ^= m < 0.0;
                    let a = m.abs();
                    if a < min1 {
                        min2 = min1;
                        min1 = a;
                        arg = e;
                    } else if a < min2 {
                        min2 = a;
                    }
                }
                for &e in edges {
                    let mag = if e == arg { min2 } else { min1 } * self.scaling;
                    let neg = negative ^ (v2c[e] < 0.0);
                    c2v[e] = if neg { -mag } else { mag };
                }
            }
            for v in 0..self.n {
                let (lo, hi) = (self.var_ptr[v], self.var_ptr[v + 1]);
                let total = llr[v] + c2v[lo..hi].iter().sum::<f64>();
                for e in lo..hi {
                    v2c[e] = total - c2v[e];
                }
                decision[v] = hard(total);
            }
            if self.syndrome_is_zero(&decision) {
                return Ok(DecodeOutcome {
                    success: true,
                    iterations: it,
                    decision,
                });
            }
        }
        Ok(DecodeOutcome {
            success: false,
            iterations: self.max_iterations,
            decision,
        })
    }
}

/// Plain (or scaled, per `config.scaling`) min-sum decoding.
pub fn min_sum_decode(
    h: &ParityCheckMatrix,
    llr: &[f64],
    config: &DecoderConfig,
) -> Result<DecodeOutcome, DecodeError> {
    let config = DecoderConfig {
        algorithm: Algorithm::MinSum,
        ..config.clone()
    };
    MinSumDecoder::new(h, &config)?.decode(llr)
}
