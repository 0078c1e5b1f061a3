use serde::Serialize;

use super::binarize::BinaryEventTable;
use super::correlation::CandidatePair;
use crate::error::{Error, Result};

/// Empirical `P(B|A)` and `P(B|not A)` over a binary event table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditioningStats {
    /// `None` when A never occurs.
    pub p_given: Option<f64>,
    /// `None` when A always occurs.
    pub p_given_not: Option<f64>,
    pub n_a: usize,
    pub n_not_a: usize,
}

impl ConditioningStats {
    /// `P(B|A) - P(B|not A)` when both sides are defined.
    pub fn lift(&self) -> Option<f64> {
        Some(self.p_given? - self.p_given_not?)
    }
}

/// Counts how often `b` fires with and without `a` across all periods.
pub fn conditioning(events: &BinaryEventTable, a: usize, b: usize) -> Result<ConditioningStats> {
    if a == b {
        return Err(Error::SameVariable(a));
    }
    let ca = events.column(a)?;
    let cb = events.column(b)?;
    let (mut n_a, mut n_ab, mut n_not_a_b) = (0usize, 0usize, 0usize);
    for (&ea, &eb) in ca.iter().zip(cb) {
        if ea {
            n_a += 1;
            n_ab += eb as usize;
        } else {
            n_not_a_b += eb as usize;
        }
    }
    let n_not_a = ca.len() - n_a;
    let ratio = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
    Ok(ConditioningStats {
        p_given: ratio(n_ab, n_a),
        p_given_not: ratio(n_not_a_b, n_not_a),
        n_a,
        n_not_a,
    })
}

/// A directed edge `source -> target` with the statistics that justified it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrientedEdge {
    pub source: usize,
    pub target: usize,
    pub stats: ConditioningStats,
}

/// A direction that could not be tested because a probability is undefined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrientWarning {
    pub source: usize,
    pub target: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Orientation {
    pub edges: Vec<OrientedEdge>,
    pub warnings: Vec<OrientWarning>,
}

/// Tests both directions of every candidate pair: `i -> j` is kept when
/// `P(j|i) - P(j|not i) > margin`, and `j -> i` independently by the same
/// test with roles swapped. Edges are sorted by `(source, target)`.
pub fn orient(
    pairs: &[CandidatePair],
    events: &BinaryEventTable,
    margin: f64,
) -> Result<Orientation> {
    if !(margin.is_finite() && margin >= 0.0) {
        return Err(Error::InvalidMargin(margin));
    }
    let mut out = Orientation::default();
    for p in pairs {
        for (source, target) in [(p.i, p.j), (p.j, p.i)] {
            let stats = conditioning(events, source, target)?;
            match stats.lift() {
                Some(lift) if lift > margin => out.edges.push(OrientedEdge { source, target, stats }),
                Some(_) => {}
                None => out.warnings.push(OrientWarning {
                    source,
                    target,
                    message: format!(
                        "conditioning of {target} on {source} is undefined ({} periods with the event, {} without)",
                        stats.n_a, stats.n_not_a
                    ),
                }),
            }
        }
    }
    out.edges.sort_by_key(|e| (e.source, e.target));
    Ok(out)
}
