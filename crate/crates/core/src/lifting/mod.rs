//! Cyclic-lifting algebra: permutation indices of paths and cycles, lifted
//! and block-circulant matrices, and GF(2) rank, rate and minimum distance.

mod gf2;
mod index;
mod lifted;

use thiserror::Error;

use crate::graph::{CycleError, EdgeId};

pub use gf2::{code_rate, gf2_rank, min_distance_bruteforce, BitMatrix, MAX_BRUTEFORCE_DIMENSION};
pub use index::{
    compose_shift_indices, cycle_order, cycle_permutation_index, order_in_zn,
    path_permutation_index, PermutationIndexMatrix,
};
pub use lifted::{
    block_circulant_form, circulant_components, lift, trace_inverse_image, InverseImageReport,
    LiftedCode,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("lifting degree must be at least 1, got {0}")]
    BadDegree(usize),
    #[error("index matrix shape {found:?} does not match {expected:?}")]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("index {value} at ({row}, {col}) is not in 0..{degree}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        degree: usize,
    },
    #[error("index support differs from the parity-check matrix at ({row}, {col})")]
    SupportMismatch { row: usize, col: usize },
    #[error("edge {0} has no finite permutation index")]
    InfiniteEdge(EdgeId),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("code dimension {dimension} exceeds the brute-force limit {limit}")]
    DimensionTooLarge { dimension: usize, limit: usize },
    #[error("lifted traversal disagrees with the cycle order: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

impl LiftError {
    fn format(line: usize, msg: impl Into<String>) -> Self {
        LiftError::Format {
            line,
            msg: msg.into(),
        }
    }
}
