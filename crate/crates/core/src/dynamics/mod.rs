//! Structural-function dynamics over a finite directed graph.
//!
//! Each node `x` maps to the set of its direct effects `f({x})`, and a set
//! maps to the union of its members' images. Everything here (orbits,
//! invariance, coverings, loops, attractors, basins) is defined through that
//! set-valued map. All returned sets are ordered by ascending node id.

mod attractor;
mod graph;
mod nodeset;
mod scc;

pub use attractor::{
    attractor_findings, attractors, basin, orbit_intersection, reachability_matrix,
    AttractorFinding,
};
pub use graph::{covers, image, is_invariant, is_loop, orbit, CausalGraph, OrbitResult};
pub use nodeset::NodeSet;
pub use scc::{strongly_connected_components, weak_components};
