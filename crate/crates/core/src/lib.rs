//! Design and verification of cyclic liftings of LDPC codes that remove
//! the short cycles forming dominant trapping sets.
//!
//! The crate is organized bottom-up:
//!
//! - [`graph`]: parity-check matrices, Tanner graphs, cycles and girth.
//! - [`lifting`]: permutation indices, cycle orders, lifted and
//!   block-circulant matrices, GF(2) rank, rate and minimum distance.
//! - [`trapping`]: trapping sets, catalogs and critical-number search.
//! - [`ies`]: intentional edge swapping, the index assignment that gives
//!   every catalog cycle an order above one.
//! - [`decode`]: Gallager A/B and min-sum decoders with BSC/BIAWGN channels.
//! - [`sim`]: Monte Carlo harness, error-floor estimate and design pipeline.
//! - [`codes`]: built-in codes and small reference subgraphs.

pub mod codes;
pub mod decode;
pub mod graph;
pub mod ies;
pub mod lifting;
pub mod sim;
pub mod trapping;
