//! Partition-aware color refinement for studying the distinguishing power of
//! graph partitioning neural networks (GPNN).
//!
//! The crate provides permutation-invariant partitioning schemes, partition
//! colorings, an injective (combinatorial) GPNN refinement in its three
//! interaction variants, 1-WL and 2-FWL reference oracles, exact isomorphism
//! and partition-level isomorphism checks, a harness that checks the
//! expected containments between all of these, and a forward-only numeric
//! GPNN for equivariance checks.

pub mod cli;
pub mod coloring;
pub mod error;
pub mod gpnn;
pub mod harness;
pub mod io;
pub mod graph;
pub mod interning;
pub mod iso;
pub mod neural;
pub mod partition;
pub mod wl;

pub use error::{Error, Result};
pub use graph::{Graph, Permutation};
