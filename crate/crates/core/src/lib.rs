//! Causal screening of monthly overnight-stay series and set-valued dynamics
//! on the resulting directed graph.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`ingest`] loads a wide CSV panel of monthly counts.
//! 2. [`screening`] computes pairwise Pearson correlations, keeps pairs at or
//!    above a threshold and orients each kept pair with the conditioning-factor
//!    test `P(B|A) > P(B|not A)` on a binarized copy of the panel.
//! 3. [`dynamics`] treats the oriented edges as a structural function
//!    `f(S) = { y : x -> y, x in S }` and computes orbits, invariant sets,
//!    coverings, loops, attractors and basins of attraction.
//! 4. [`report`] serializes everything as JSON, DOT, CSV matrices or text.
//!
//! [`oracle`] holds brute-force reference implementations and a planted-model
//! series generator used by the test suites.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod ingest;
pub mod oracle;
mod par;
pub mod report;
pub mod screening;

pub use dynamics::{CausalGraph, NodeSet};
pub use error::{Error, Result};
pub use ingest::{TimeSeriesTable, VariableCatalog};
