use serde::Serialize;

use super::graph::orbit;
use super::{strongly_connected_components, CausalGraph, NodeSet};
use crate::error::{Error, Result};
use crate::par;

/// Terminal strongly connected components that contain at least one edge.
///
/// Such a component is a loop (every member lies on an internal cycle) and
/// invariant (no edge leaves it). Sorted by smallest member.
pub fn attractors(g: &CausalGraph) -> Vec<NodeSet> {
    strongly_connected_components(g)
        .into_iter()
        .filter(|c| {
            let has_cycle = c.len() > 1 || c.first().is_some_and(|v| g.has_edge(v, v));
            let closed = c.iter().all(|v| g.successors(v).is_subset(c));
            has_cycle && closed
        })
        .collect()
}

/// Every node whose orbit meets the attractor `t`, together with `t` itself.
pub fn basin(g: &CausalGraph, t: &NodeSet) -> Result<NodeSet> {
    if !attractors(g).contains(t) {
        return Err(Error::NotAnAttractor(t.to_vec()));
    }
    // nodes that reach t in one or more steps
    let mut seen = t.clone();
    let mut stack = t.to_vec();
    while let Some(v) = stack.pop() {
        for p in g.predecessors(v) {
            if seen.insert(p) {
                stack.push(p);
            }
        }
    }
    Ok(seen)
}

/// Intersection of the singleton orbits `orbit({x})` over `x in b`.
pub fn orbit_intersection(g: &CausalGraph, b: &NodeSet) -> Result<NodeSet> {
    let mut members = b.iter();
    let first = members.next().ok_or(Error::EmptySet)?;
    let mut acc = orbit(g, &NodeSet::singleton(first)).orbit;
    for x in members {
        if acc.is_empty() {
            break;
        }
        acc = acc.intersection(&orbit(g, &NodeSet::singleton(x)).orbit);
    }
    Ok(acc)
}

/// An attractor, its basin, and the orbit intersection over the basin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttractorFinding {
    pub attractor: NodeSet,
    pub basin: NodeSet,
    /// Recomputed from the basin; equals `attractor` on a consistent graph.
    pub witness: NodeSet,
}

impl AttractorFinding {
    pub fn witness_matches(&self) -> bool {
        self.witness == self.attractor
    }

    /// Basin members outside the attractor.
    pub fn feeders(&self) -> NodeSet {
        self.basin.difference(&self.attractor)
    }
}

/// Attractors with their basins and recomputed orbit-intersection witnesses.
pub fn attractor_findings(g: &CausalGraph) -> Vec<AttractorFinding> {
    let found = attractors(g);
    par::map_slice(&found, |a| {
        let basin = basin(g, a).expect("attractors() output is an attractor");
        let witness = orbit_intersection(g, &basin).expect("basin contains the attractor");
        AttractorFinding {
            attractor: a.clone(),
            basin,
            witness,
        }
    })
}

/// Boolean matrix in catalog order: entry `(i, j)` is true iff `j` lies in
/// `orbit({i})`. Sinks have all-false rows.
pub fn reachability_matrix(g: &CausalGraph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    par::map_range(n, |i| {
        let o = orbit(g, &NodeSet::singleton(i + 1)).orbit;
        (1..=n).map(|j| o.contains(j)).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{image, is_invariant, is_loop};
    use super::*;

    #[test]
    fn attractor_examples() {
        assert_eq!(attractors(&g3()), vec![NodeSet::from([B, C])]);
        assert!(attractors(&graph(3, &[])).is_empty());
        // 2-cycle leaking into a sink: neither qualifies
        assert!(attractors(&graph(3, &[(1, 2), (2, 1), (2, 3)])).is_empty());
        assert_eq!(
            attractors(&graph(5, &[(1, 2), (2, 1), (3, 4), (4, 5), (5, 3)])),
            vec![NodeSet::from([1, 2]), NodeSet::from([3, 4, 5])]
        );
        assert_eq!(attractors(&graph(1, &[(1, 1)])), vec![NodeSet::from([1])]);
    }

    #[test]
    fn basin_examples() {
        let g = g3();
        assert_eq!(
            basin(&g, &NodeSet::from([B, C])).unwrap(),
            NodeSet::from([A, B, C])
        );
        assert_eq!(
            basin(&g, &NodeSet::from([B])),
            Err(Error::NotAnAttractor(vec![B]))
        );
        let lonely = graph(3, &[(1, 2), (2, 1), (3, 3)]);
        assert_eq!(
            basin(&lonely, &NodeSet::from([1, 2])).unwrap(),
            NodeSet::from([1, 2])
        );
    }

    #[test]
    fn orbit_intersection_examples() {
        let g = g3();
        assert_eq!(
            orbit_intersection(&g, &NodeSet::from([A, B, C])).unwrap(),
            NodeSet::from([B, C])
        );
        let sink = graph(3, &[(1, 2), (2, 1), (1, 3)]);
        assert_eq!(
            orbit_intersection(&sink, &NodeSet::from([1, 3])).unwrap(),
            NodeSet::new()
        );
        assert_eq!(
            orbit_intersection(&g, &NodeSet::new()),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn findings_satisfy_attractor_properties() {
        let g = graph(
            6,
            &[
                (1, 2),
                (2, 3),
                (3, 2),
                (4, 5),
                (5, 4),
                (1, 4),
                (6, 6),
                (6, 1),
            ],
        );
        let found = attractor_findings(&g);
        assert_eq!(found.len(), 2);
        for f in &found {
            assert!(f.witness_matches());
            assert!(is_invariant(&g, &f.attractor));
            assert!(is_loop(&g, &f.attractor));
            assert!(image(&g, &f.attractor).is_subset(&f.attractor));
        }
        assert_eq!(found[0].basin, NodeSet::from([1, 2, 3, 6]));
        assert_eq!(found[0].feeders(), NodeSet::from([1, 6]));
    }

    #[test]
    fn reachability_examples() {
        let m = reachability_matrix(&g3());
        assert_eq!(m[0], vec![false, true, true]);
        assert_eq!(m[1], vec![false, true, true]);
        let m = reachability_matrix(&graph(3, &[]));
        assert!(m.iter().flatten().all(|&x| !x));
        let m = reachability_matrix(&graph(3, &[(1, 2), (2, 3)]));
        assert_eq!(m[2], vec![false; 3]);
    }
}
