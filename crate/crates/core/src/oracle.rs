//! Brute-force reference implementations and a planted-model series
//! generator. Nothing here shares code with [`crate::dynamics`] beyond
//! reading the graph's edge set; the routines are deliberately naive and
//! capped in size.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dynamics::{CausalGraph, NodeSet};
use crate::error::{Error, Result};
use crate::ingest::{builtin_catalog, Period, TimeSeriesTable};

pub const ORBIT_CAP: usize = 16;
pub const ATTRACTOR_CAP: usize = 10;

/// Scale of the relative deviation drawn for the first simulated month.
const INITIAL_SPREAD: f64 = 0.1;

/// Adjacency as bitmasks over 0-based indices: bit `j` of `rows[i]` means
/// an edge `i+1 -> j+1`.
fn adjacency(g: &CausalGraph) -> Vec<u32> {
    let n = g.node_count();
    (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| g.has_edge(i + 1, j + 1))
                .fold(0u32, |m, j| m | 1 << j)
        })
        .collect()
}

/// Boolean vector-matrix product: the indicator of all successors of `v`.
fn step(adj: &[u32], v: u32) -> u32 {
    adj.iter()
        .enumerate()
        .filter(|&(i, _)| v & (1 << i) != 0)
        .fold(0, |acc, (_, row)| acc | row)
}

fn orbit_mask(adj: &[u32], start: u32) -> u32 {
    let mut v = start;
    let mut union = 0;
    for _ in 0..adj.len() {
        v = step(adj, v);
        union |= v;
    }
    union
}

fn to_mask(s: &NodeSet) -> u32 {
    s.iter().fold(0, |m, id| m | 1 << (id - 1))
}

fn from_mask(m: u32) -> NodeSet {
    (0..32)
        .filter(|&i| m & (1 << i) != 0)
        .map(|i| i + 1)
        .collect()
}

/// Union of `s · A^k` for `k = 1..=|V|`, with `A` the boolean adjacency matrix.
pub fn brute_orbit(g: &CausalGraph, s: &NodeSet) -> Result<NodeSet> {
    let n = g.node_count();
    if n > ORBIT_CAP {
        return Err(Error::SizeCap {
            cap: ORBIT_CAP,
            got: n,
        });
    }
    Ok(from_mask(orbit_mask(&adjacency(g), to_mask(s))))
}

/// Transitive closure of the subgraph induced by `set` (Warshall), as
/// "reachable in one or more steps without leaving `set`".
fn internal_closure(adj: &[u32], set: u32) -> Vec<u32> {
    let n = adj.len();
    let mut reach: Vec<u32> = adj
        .iter()
        .enumerate()
        .map(|(i, &r)| if set & (1 << i) != 0 { r & set } else { 0 })
        .collect();
    for k in 0..n {
        for i in 0..n {
            if reach[i] & (1 << k) != 0 {
                reach[i] |= reach[k];
            }
        }
    }
    reach
}

/// Exhaustive search over all non-empty node subsets for sets that are
/// invariant, are loops, and equal the orbit intersection over their basin.
/// Only maximal qualifying sets are returned, sorted by smallest member.
pub fn brute_attractors(g: &CausalGraph) -> Result<Vec<NodeSet>> {
    let n = g.node_count();
    if n > ATTRACTOR_CAP {
        return Err(Error::SizeCap {
            cap: ATTRACTOR_CAP,
            got: n,
        });
    }
    let adj = adjacency(g);
    let orbits: Vec<u32> = (0..n).map(|i| orbit_mask(&adj, 1 << i)).collect();
    let mut found = Vec::new();
    for t in 1u32..(1 << n) {
        let members = || (0..n).filter(move |&i| t & (1 << i) != 0);
        let invariant = members().all(|i| adj[i] & !t == 0);
        if !invariant {
            continue;
        }
        let reach = internal_closure(&adj, t);
        let is_loop = members().all(|i| reach[i] & t == t);
        if !is_loop {
            continue;
        }
        let basin = (0..n)
            .filter(|&x| orbits[x] & t != 0)
            .fold(t, |b, x| b | 1 << x);
        let meet = (0..n)
            .filter(|&x| basin & (1 << x) != 0)
            .fold(u32::MAX, |m, x| m & orbits[x]);
        if meet == t {
            found.push(t);
        }
    }
    let mut maximal: Vec<NodeSet> = found
        .iter()
        .filter(|&&t| !found.iter().any(|&u| u != t && u & t == t))
        .map(|&t| from_mask(t))
        .collect();
    maximal.sort_by_key(|s| s.first());
    Ok(maximal)
}

/// A known causal graph plus the parameters used to simulate series from it.
///
/// Values are generated in relative terms around each variable's base level:
/// a variable with parents moves by `coupling` times the summed relative
/// deviations of its parents in the previous month, plus Gaussian noise of
/// scale `noise`. Variables without parents follow an AR(1) process with
/// coefficient `root_persistence`, which gives them the month-to-month
/// persistence that lets contemporaneous correlation see lagged links.
#[derive(Debug, Clone)]
pub struct PlantedModel {
    pub graph: CausalGraph,
    pub base: Vec<f64>,
    pub noise: f64,
    pub coupling: f64,
    pub root_persistence: f64,
    /// Seeds a ChaCha8 stream; standard normals come from `rand_distr`.
    pub seed: u64,
}

impl PlantedModel {
    fn check(&self) -> Result<()> {
        let n = self.graph.node_count();
        let bad = |m: &str| Err(Error::InvalidModel(m.to_string()));
        if self.base.len() != n {
            return bad("one base level per variable is required");
        }
        if self.base.iter().any(|b| !(b.is_finite() && *b > 0.0)) {
            return bad("base levels must be positive and finite");
        }
        if !(self.noise.is_finite() && self.noise >= 0.0) {
            return bad("noise scale must be finite and non-negative");
        }
        if !(self.coupling.is_finite() && self.coupling > self.noise) {
            return bad("coupling strength must exceed the noise scale");
        }
        if !(0.0..1.0).contains(&self.root_persistence) {
            return bad("root persistence must lie in [0, 1)");
        }
        Ok(())
    }
}

/// Fourteen variables of the builtin catalog wired as seven disjoint
/// cause -> effect pairs (odd id drives the next even id), coupling 1.0,
/// noise 0.05, root persistence 0.9.
pub fn paired_planted_model(seed: u64) -> PlantedModel {
    let edges = (1..=13).step_by(2).map(|i| (i, i + 1));
    let graph = CausalGraph::new(builtin_catalog(), edges).expect("valid planted edges");
    PlantedModel {
        base: (0..14).map(|i| 10_000.0 + 2_500.0 * i as f64).collect(),
        graph,
        noise: 0.05,
        coupling: 1.0,
        root_persistence: 0.9,
        seed,
    }
}

/// Simulates `periods` months starting at 2006-01.
pub fn synth_series(model: &PlantedModel, periods: usize) -> Result<TimeSeriesTable> {
    model.check()?;
    if periods < 24 {
        return Err(Error::TooShort {
            needed: 24,
            got: periods,
        });
    }
    let g = &model.graph;
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let mut shock = || -> f64 { StandardNormal.sample(&mut rng) };

    // relative deviations from base; the first month is spread independently
    // of the noise scale so that noise-free models still move
    let mut prev: Vec<f64> = (0..n).map(|_| INITIAL_SPREAD * shock()).collect();
    let mut rows = Vec::with_capacity(periods);
    let mut period = Period::new(2006, 1).expect("valid month");
    let mut months = Vec::with_capacity(periods);
    for t in 0..periods {
        let dev: Vec<f64> = if t == 0 {
            prev.clone()
        } else {
            (1..=n)
                .map(|v| {
                    let parents = g.predecessors(v);
                    let drive = if parents.is_empty() {
                        model.root_persistence * prev[v - 1]
                    } else {
                        model.coupling * parents.iter().map(|p| prev[p - 1]).sum::<f64>()
                    };
                    drive + model.noise * shock()
                })
                .collect()
        };
        rows.push(
            dev.iter()
                .zip(&model.base)
                .map(|(d, b)| (b * (1.0 + d)).max(0.0))
                .collect(),
        );
        months.push(period);
        period = period.succ();
        prev = dev;
    }
    TimeSeriesTable::new(g.catalog().clone(), months, rows)
}
