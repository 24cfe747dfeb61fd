//! Iterative decoders (Gallager A, Gallager B, min-sum) and channel models.

mod channel;
mod hard;
mod minsum;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::ParityCheckMatrix;

pub use channel::{transmit, transmit_with, ChannelModel, Received};
pub use hard::{gallager_a_decode, gallager_b_decode, HardDecoder};
pub use minsum::{min_sum_decode, MinSumDecoder};

/// Default iteration cap.
pub const DEFAULT_MAX_ITERATIONS: usize = 50;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecodeError {
    #[error("input has length {found}, code length is {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("non-finite channel value at position {0}")]
    NonFinite(usize),
    #[error("invalid decoder configuration: {0}")]
    Config(String),
    #[error("invalid channel parameter: {0}")]
    Channel(String),
    #[error("{algorithm} cannot decode {input} input")]
    InputKind {
        algorithm: Algorithm,
        input: &'static str,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    GallagerA,
    GallagerB,
    MinSum,
}

impl Algorithm {
    pub fn is_hard_decision(self) -> bool {
        !matches!(self, Algorithm::MinSum)
    }

    /// Short name used on the command line and in CSV output.
    pub fn short_name(self) -> &'static str {
        match self {
            Algorithm::GallagerA => "ga",
            Algorithm::GallagerB => "gb",
            Algorithm::MinSum => "ms",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::GallagerA => "gallager-a",
            Algorithm::GallagerB => "gallager-b",
            Algorithm::MinSum => "min-sum",
        })
    }
}

impl FromStr for Algorithm {
    type Err = DecodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ga" | "gallager-a" => Ok(Algorithm::GallagerA),
            "gb" | "gallager-b" => Ok(Algorithm::GallagerB),
            "ms" | "min-sum" => Ok(Algorithm::MinSum),
            other => Err(DecodeError::Config(format!("unknown decoder {other:?}"))),
        }
    }
}

/// Number of disagreeing extrinsic check messages that makes a variable
/// node send the complement of its channel value.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum FlipThreshold {
    /// Gallager B default: strict majority of the `d_v - 1` extrinsic
    /// messages, `floor((d_v - 1) / 2) + 1`.
    #[default]
    StrictMajority,
    /// Gallager A: all `d_v - 1` extrinsic messages must disagree.
    AllExtrinsic,
    /// Explicit thresholds per variable degree; degrees not listed fall back
    /// to the strict majority.
    PerDegree(BTreeMap<usize, usize>),
}

impl FlipThreshold {
    /// Threshold for a variable of degree `dv`, never below 1, so a node
    /// without extrinsic inputs repeats its channel value.
    pub fn for_degree(&self, dv: usize) -> usize {
        let ext = dv.saturating_sub(1);
        let t = match self {
            FlipThreshold::StrictMajority => ext / 2 + 1,
            FlipThreshold::AllExtrinsic => ext,
            FlipThreshold::PerDegree(map) => map.get(&dv).copied().unwrap_or(ext / 2 + 1),
        };
        t.max(1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecoderConfig {
    pub algorithm: Algorithm,
    pub max_iterations: usize,
    /// Flip rule for Gallager B. Gallager A always uses [`FlipThreshold::AllExtrinsic`].
    pub threshold: FlipThreshold,
    /// Multiplier on check-to-variable magnitudes in min-sum; 1.0 is plain min-sum.
    pub scaling: f64,
}

impl DecoderConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        DecoderConfig {
            algorithm,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            threshold: FlipThreshold::default(),
            scaling: 1.0,
        }
    }

    pub fn gallager_a() -> Self {
        Self::new(Algorithm::GallagerA)
    }

    pub fn gallager_b() -> Self {
        Self::new(Algorithm::GallagerB)
    }

    pub fn min_sum() -> Self {
        Self::new(Algorithm::MinSum)
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn validate(&self) -> Result<(), DecodeError> {
        if self.max_iterations == 0 {
            return Err(DecodeError::Config(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !(self.scaling.is_finite() && self.scaling > 0.0) {
            return Err(DecodeError::Config(format!(
                "min-sum scaling {} must be positive",
                self.scaling
            )));
        }
        Ok(())
    }

    /// The flip rule actually applied by the hard-decision decoders.
    pub fn effective_threshold(&self) -> FlipThreshold {
        match self.algorithm {
            Algorithm::GallagerA => FlipThreshold::AllExtrinsic,
            _ => self.threshold.clone(),
        }
    }
}

/// Result of one decoding attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// `true` iff the final hard decision has zero syndrome.
    pub success: bool,
    /// Iterations run; 0 when the input already satisfied every check.
    pub iterations: usize,
    pub decision: Vec<u8>,
}

impl DecodeOutcome {
    /// Positions where the decision differs from `transmitted`.
    pub fn error_support(&self, transmitted: &[u8]) -> Vec<usize> {
        self.decision
            .iter()
            .zip(transmitted)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Decodes channel output with the algorithm named in `config`.
pub fn decode(
    h: &ParityCheckMatrix,
    input: &Received,
    config: &DecoderConfig,
) -> Result<DecodeOutcome, DecodeError> {
    match (config.algorithm, input) {
        (Algorithm::GallagerA, Received::Hard(bits)) => gallager_a_decode(h, bits, config),
        (Algorithm::GallagerB, Received::Hard(bits)) => gallager_b_decode(h, bits, config),
        (Algorithm::MinSum, Received::Soft(llr)) => min_sum_decode(h, llr, config),
        (Algorithm::MinSum, Received::Hard(bits)) => {
            // hard input to a soft decoder: unit-magnitude LLRs
            let llr: Vec<f64> = bits
                .iter()
                .map(|&b| if b & 1 == 1 { -1.0 } else { 1.0 })
                .collect();
            min_sum_decode(h, &llr, config)
        }
        (algorithm, Received::Soft(_)) => Err(DecodeError::InputKind {
            algorithm,
            input: "soft",
        }),
    }
}
