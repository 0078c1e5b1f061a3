use std::collections::BTreeSet;

use serde::Serialize;

use super::NodeSet;
use crate::error::{Error, Result};
use crate::ingest::VariableCatalog;

/// Catalogued nodes plus directed edges `source -> target`, read as
/// "source is a cause of target". Self-loops are allowed; duplicates are not.
#[derive(Debug, Clone, PartialEq)]
pub struct CausalGraph {
    catalog: VariableCatalog,
    edges: BTreeSet<(usize, usize)>,
    succ: Vec<NodeSet>,
    pred: Vec<NodeSet>,
}

impl CausalGraph {
    pub fn new<I>(catalog: VariableCatalog, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = catalog.len();
        let mut set = BTreeSet::new();
        let mut succ = vec![NodeSet::new(); n];
        let mut pred = vec![NodeSet::new(); n];
        for (s, t) in edges {
            if !catalog.contains(s) || !catalog.contains(t) {
                return Err(Error::EdgeEndpoint(s, t));
            }
            if !set.insert((s, t)) {
                return Err(Error::DuplicateEdge(s, t));
            }
            succ[s - 1].insert(t);
            pred[t - 1].insert(s);
        }
        Ok(Self {
            catalog,
            edges: set,
            succ,
            pred,
        })
    }

    pub fn catalog(&self) -> &VariableCatalog {
        &self.catalog
    }

    pub fn node_count(&self) -> usize {
        self.catalog.len()
    }

    pub fn nodes(&self) -> NodeSet {
        self.catalog.ids().collect()
    }

    /// Edges in `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, source: usize, target: usize) -> bool {
        self.edges.contains(&(source, target))
    }

    /// Direct effects of `id`: `f({id})`.
    pub fn successors(&self, id: usize) -> &NodeSet {
        &self.succ[id - 1]
    }

    pub fn predecessors(&self, id: usize) -> &NodeSet {
        &self.pred[id - 1]
    }
}

/// One-step image `f(S)`: every target of an edge leaving a member of `s`.
/// Ids outside the catalog are ignored.
pub fn image(g: &CausalGraph, s: &NodeSet) -> NodeSet {
    let mut out = NodeSet::new();
    for id in s.iter().filter(|&id| g.catalog.contains(id)) {
        out.union_with(g.successors(id));
    }
    out
}

/// Forward iterates of a set and their union.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitResult {
    /// `f(S), f²(S), ...`, each of which added at least one new node to the
    /// running union. Empty when `f(S)` is empty.
    pub iterates: Vec<NodeSet>,
    /// Union of the iterates. `S` itself only appears if it is re-reached.
    pub orbit: NodeSet,
}

/// Iterates `f` from `f(S)` until the running union stops growing.
///
/// Once an iterate adds nothing new, every later iterate is contained in
/// the union as well, so the walk can stop there. Each kept iterate adds at
/// least one node, so there are at most `|V|` of them.
pub fn orbit(g: &CausalGraph, s: &NodeSet) -> OrbitResult {
    let mut iterates = Vec::new();
    let mut union = NodeSet::new();
    let mut current = image(g, s);
    while !current.is_subset(&union) {
        union.union_with(&current);
        let next = image(g, &current);
        iterates.push(current);
        current = next;
    }
    OrbitResult {
        iterates,
        orbit: union,
    }
}

/// `f(S) ⊆ S`.
pub fn is_invariant(g: &CausalGraph, s: &NodeSet) -> bool {
    image(g, s).is_subset(s)
}

/// `b ⊆ f(a)`.
pub fn covers(g: &CausalGraph, a: &NodeSet, b: &NodeSet) -> bool {
    b.is_subset(&image(g, a))
}

fn reach_within(g: &CausalGraph, start: usize, s: &NodeSet, forward: bool) -> NodeSet {
    let mut seen = NodeSet::singleton(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        let next = if forward {
            g.successors(v)
        } else {
            g.predecessors(v)
        };
        for w in next.iter().filter(|&w| s.contains(w)) {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen
}

/// Non-empty, strongly connected through edges inside `s`, with every member
/// on a cycle inside `s`. A singleton needs a self-loop.
pub fn is_loop(g: &CausalGraph, s: &NodeSet) -> bool {
    let Some(first) = s.first() else {
        return false;
    };
    if s.iter().any(|id| !g.catalog.contains(id)) {
        return false;
    }
    if s.len() == 1 {
        return g.has_edge(first, first);
    }
    reach_within(g, first, s, true) == *s && reach_within(g, first, s, false) == *s
}
