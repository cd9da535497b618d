//! Sensitivity of hypergraph properties.
//!
//! The crate is split into five layers:
//!
//! - [`boolfn`]: truth tables, partial assignments and exact complexity
//!   measures (sensitivity, block sensitivity, certificate complexity).
//! - [`symmetry`]: hyperedge indexing, vertex permutations acting on
//!   variables, group specifications and placement enumeration.
//! - [`constructions`]: the low-sensitivity minterms for uniform and
//!   k-partite hypergraph properties, the XOR composition for abelian
//!   groups, and minterm-transitive function evaluation.
//! - [`analysis`]: support-size formulas, distance clusters, claim
//!   verification, brute-force oracles, property scans and scaling reports.
//! - [`cli`]: the `hypersens` command line front end.

pub mod analysis;
pub mod boolfn;
pub mod cli;
pub mod constructions;
mod error;
pub mod io;
pub mod symmetry;

pub use error::{Error, Result};
