//! Tanner graphs, parity-check matrix I/O, and cycle machinery.

mod cycles;
mod matrix;
mod tanner;

pub use cycles::{enumerate_cycles, girth, Cycle, CycleError, Through, Walk};
pub use matrix::{MatrixError, ParityCheckMatrix};
pub use tanner::{Edge, EdgeId, GraphError, InducedSubgraph, Node, TannerGraph};
