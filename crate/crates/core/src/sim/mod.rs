//! Monte Carlo FER/BER measurement, error-floor prediction and the
//! end-to-end lifting design pipeline.

mod floor;
mod montecarlo;
mod pipeline;

use thiserror::Error;

use crate::decode::DecodeError;
use crate::ies::IesError;
use crate::lifting::LiftError;
use crate::trapping::TrappingError;

pub use floor::{estimate_floor, log_grid, loglog_slope, FloorEstimate};
pub use montecarlo::{csv_header, monte_carlo, SimResult, StopRule, CSV_HEADER};
pub use pipeline::{design_pipeline, DesignAttempt, PipelineResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid stop rule: {0}")]
    StopRule(String),
    #[error(
        "no decoding failure up to weight {max_weight}: the floor lies below the search depth"
    )]
    FloorBelowSearchDepth { max_weight: usize },
    #[error("empty lifting degree range {lo}..={hi}")]
    EmptyRange { lo: usize, hi: usize },
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Trapping(#[from] TrappingError),
    #[error(transparent)]
    Ies(#[from] IesError),
    #[error(transparent)]
    Lift(#[from] LiftError),
}
