//! Analysis report assembly and its serializations.

mod dot;
mod json;
mod matrix;
mod text;

use serde::Serialize;

pub use dot::{parse_dot_edges, to_dot};
pub use json::to_json;
pub use matrix::{matrix_csv, parse_bool_matrix_csv, CsvCell};
pub use text::summary_text;

use crate::dynamics::{self, AttractorFinding, CausalGraph, NodeSet, OrbitResult};
use crate::ingest::VariableCatalog;
use crate::screening::{BinarizeRule, CandidatePair, CorrelationMatrix, Orientation};

/// Echo of the settings that produced a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    /// `series` for the full pipeline, `graph` for a user-supplied edge list.
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub binarize: Option<BinarizeRule>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub absolute: Option<bool>,
}

impl ConfigEcho {
    pub fn graph_only() -> Self {
        Self {
            mode: "graph",
            threshold: None,
            binarize: None,
            margin: None,
            absolute: None,
        }
    }
}

/// Outputs of the statistical stage, when the graph came from series data.
#[derive(Debug, Clone)]
pub struct ScreeningOutput {
    pub correlations: CorrelationMatrix,
    pub pairs: Vec<CandidatePair>,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeRecord {
    pub source: usize,
    pub target: usize,
    pub p_given: Option<f64>,
    pub p_given_not: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeOrbit {
    pub node: usize,
    #[serde(flatten)]
    pub result: OrbitResult,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnnotationKind {
    /// Node whose orbit is empty (all-zero reachability row).
    NoOrbit,
    /// Invariant weak component, outside every attractor, whose members only
    /// interact with each other.
    EndogamousBlock,
    /// Basin members outside the attractor: influencing them eventually
    /// reaches the attractor.
    CampaignTarget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Annotation {
    pub kind: AnnotationKind,
    pub members: NodeSet,
    /// Attractor the annotation refers to, for campaign targets.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attractor: Option<NodeSet>,
}

#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub config: ConfigEcho,
    pub catalog: VariableCatalog,
    pub correlations: Option<CorrelationMatrix>,
    pub pairs: Option<Vec<CandidatePair>>,
    pub edges: Vec<EdgeRecord>,
    pub orbits: Vec<NodeOrbit>,
    pub weak_components: Vec<NodeSet>,
    pub invariant_blocks: Vec<NodeSet>,
    pub attractors: Vec<AttractorFinding>,
    pub annotations: Vec<Annotation>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    /// Runs the dynamics analysis on `graph` and assembles the report.
    pub fn build(
        config: ConfigEcho,
        graph: &CausalGraph,
        screening: Option<ScreeningOutput>,
    ) -> Self {
        let n = graph.node_count();
        let orbits: Vec<NodeOrbit> = (1..=n)
            .map(|node| NodeOrbit {
                node,
                result: dynamics::orbit(graph, &NodeSet::singleton(node)),
            })
            .collect();
        let weak_components = dynamics::weak_components(graph);
        let attractors = dynamics::attractor_findings(graph);
        let invariant_blocks: Vec<NodeSet> = weak_components
            .iter()
            .filter(|c| c.len() > 1)
            .filter(|c| dynamics::is_invariant(graph, c))
            .filter(|c| !attractors.iter().any(|f| f.attractor.is_subset(c)))
            .cloned()
            .collect();

        let mut annotations = Vec::new();
        let no_orbit: NodeSet = orbits
            .iter()
            .filter(|o| o.result.orbit.is_empty())
            .map(|o| o.node)
            .collect();
        if !no_orbit.is_empty() {
            annotations.push(Annotation {
                kind: AnnotationKind::NoOrbit,
                members: no_orbit,
                attractor: None,
            });
        }
        annotations.extend(invariant_blocks.iter().map(|b| Annotation {
            kind: AnnotationKind::EndogamousBlock,
            members: b.clone(),
            attractor: None,
        }));
        annotations.extend(attractors.iter().map(|f| Annotation {
            kind: AnnotationKind::CampaignTarget,
            members: f.feeders(),
            attractor: Some(f.attractor.clone()),
        }));

        let mut warnings = Vec::new();
        for f in attractors.iter().filter(|f| !f.witness_matches()) {
            warnings.push(format!(
                "orbit intersection over the basin {:?} differs from attractor {:?}",
                f.witness, f.attractor
            ));
        }

        let (correlations, pairs, edges) = match screening {
            Some(s) => {
                warnings.extend(s.orientation.warnings.iter().map(|w| w.message.clone()));
                let edges = s
                    .orientation
                    .edges
                    .iter()
                    .map(|e| EdgeRecord {
                        source: e.source,
                        target: e.target,
                        p_given: e.stats.p_given,
                        p_given_not: e.stats.p_given_not,
                    })
                    .collect();
                (Some(s.correlations), Some(s.pairs), edges)
            }
            None => {
                let edges = graph
                    .edges()
                    .map(|(source, target)| EdgeRecord {
                        source,
                        target,
                        p_given: None,
                        p_given_not: None,
                    })
                    .collect();
                (None, None, edges)
            }
        };

        Self {
            config,
            catalog: graph.catalog().clone(),
            correlations,
            pairs,
            edges,
            orbits,
            weak_components,
            invariant_blocks,
            attractors,
            annotations,
            warnings,
        }
    }

    /// Campaign targets (basin minus attractor), one per attractor finding.
    pub fn campaign_targets(&self) -> Vec<&NodeSet> {
        self.annotations
            .iter()
            .filter(|a| a.kind == AnnotationKind::CampaignTarget)
            .map(|a| &a.members)
            .collect()
    }
}

/// Rounds to six significant digits.
pub(crate) fn sig6(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig6_rounding() {
        assert_eq!(sig6(0.7123456789), 0.712346);
        assert_eq!(sig6(2.0 / 3.0), 0.666667);
        assert_eq!(sig6(1.0), 1.0);
        assert_eq!(sig6(-0.000123456789), -0.000123457);
        assert_eq!(sig6(0.0), 0.0);
    }

    #[test]
    fn g3_report_sections() {
        let cat = VariableCatalog::from_names(["a", "b", "c", "d"]).unwrap();
        let g = CausalGraph::new(cat, [(1, 2), (2, 3), (3, 2)]).unwrap();
        let r = AnalysisReport::build(ConfigEcho::graph_only(), &g, None);
        assert_eq!(r.attractors.len(), 1);
        assert_eq!(r.attractors[0].attractor, NodeSet::from([2, 3]));
        assert_eq!(r.campaign_targets(), vec![&NodeSet::from([1])]);
        assert_eq!(
            r.weak_components,
            vec![NodeSet::from([1, 2, 3]), NodeSet::from([4])]
        );
        assert!(r.invariant_blocks.is_empty());
        assert_eq!(r.annotations[0].kind, AnnotationKind::NoOrbit);
        assert_eq!(r.annotations[0].members, NodeSet::from([4]));
        assert_eq!(r.edges.len(), 3);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn endogamous_blocks_exclude_attractor_components() {
        let cat = VariableCatalog::from_names(["a", "b", "c", "d", "e"]).unwrap();
        let g = CausalGraph::new(cat, [(1, 2), (2, 1), (3, 4), (5, 4)]).unwrap();
        let r = AnalysisReport::build(ConfigEcho::graph_only(), &g, None);
        assert_eq!(r.invariant_blocks, vec![NodeSet::from([3, 4, 5])]);
    }
}
