//! Trapping sets: representation, catalogs, constituent cycles and
//! critical-number search against a concrete decoder.

mod catalog;
mod search;
mod set;

use thiserror::Error;

use crate::decode::DecodeError;
use crate::graph::{CycleError, EdgeId, GraphError};

pub use catalog::{load_catalog, TrappingSetCatalog};
pub use search::{
    critical_number_search, failure_support, harvest_trapping_sets, CriticalSearch, SearchScope,
    DEFAULT_PATTERN_CAP, MAX_EXHAUSTIVE_WEIGHT, OSCILLATION_PERIOD_CAP,
};
pub use set::{cycles_of, default_cycle_limit, edge_cycles, TrappingSet};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrappingError {
    #[error("trapping set has no variables")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error("set {vars:?} declared b = {declared} but its subgraph has {computed} odd checks")]
    OddCheckMismatch {
        vars: Vec<usize>,
        declared: usize,
        computed: usize,
    },
    #[error("set {vars:?} declared a = {declared} but lists {found} variables")]
    SizeMismatch {
        vars: Vec<usize>,
        declared: usize,
        found: usize,
    },
    #[error("duplicate trapping set {0:?}")]
    Duplicate(Vec<usize>),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("edge {0} is not in the trapping set's subgraph")]
    EdgeNotInSet(EdgeId),
    #[error("search would decode {patterns} patterns, above the cap of {cap}")]
    BudgetExceeded { patterns: u128, cap: u128 },
    #[error("exhaustive search over all variables is limited to weight {limit}, got {max_weight}")]
    WeightTooLarge { max_weight: usize, limit: usize },
}
