use serde::Serialize;

use super::{sig6, AnalysisReport, Annotation, ConfigEcho, NodeOrbit};
use crate::dynamics::{AttractorFinding, NodeSet};
use crate::ingest::Variable;
use crate::screening::CorrelationMatrix;

#[derive(Serialize)]
struct ReportView<'a> {
    config: &'a ConfigEcho,
    variables: &'a [Variable],
    correlations: Option<CorrelationView>,
    pairs: Option<Vec<PairView>>,
    edges: Vec<EdgeView>,
    orbits: &'a [NodeOrbit],
    weak_components: &'a [NodeSet],
    invariant_blocks: &'a [NodeSet],
    attractors: Vec<AttractorView<'a>>,
    annotations: &'a [Annotation],
    warnings: &'a [String],
}

#[derive(Serialize)]
struct CorrelationView {
    matrix: Vec<Vec<Option<f64>>>,
    undefined: Vec<Vec<bool>>,
}

impl CorrelationView {
    fn new(m: &CorrelationMatrix) -> Self {
        let rows = m.rows();
        Self {
            undefined: rows
                .iter()
                .map(|r| r.iter().map(Option::is_none).collect())
                .collect(),
            matrix: rows
                .into_iter()
                .map(|r| r.into_iter().map(|c| c.map(sig6)).collect())
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct PairView {
    i: usize,
    j: usize,
    r: f64,
}

#[derive(Serialize)]
struct EdgeView {
    source: usize,
    target: usize,
    p_given: Option<f64>,
    p_given_not: Option<f64>,
}

#[derive(Serialize)]
struct AttractorView<'a> {
    attractor: &'a NodeSet,
    basin: &'a NodeSet,
    witness: &'a NodeSet,
    campaign_target: NodeSet,
}

impl<'a> From<&'a AttractorFinding> for AttractorView<'a> {
    fn from(f: &'a AttractorFinding) -> Self {
        Self {
            attractor: &f.attractor,
            basin: &f.basin,
            witness: &f.witness,
            campaign_target: f.feeders(),
        }
    }
}

/// Pretty-printed JSON with a fixed key order. Node sets are arrays of ids in
/// ascending order; coefficients and probabilities carry six significant
/// digits.
pub fn to_json(r: &AnalysisReport) -> Vec<u8> {
    let view = ReportView {
        config: &r.config,
        variables: r.catalog.entries(),
        correlations: r.correlations.as_ref().map(CorrelationView::new),
        pairs: r.pairs.as_ref().map(|ps| {
            ps.iter()
                .map(|p| PairView {
                    i: p.i,
                    j: p.j,
                    r: sig6(p.r),
                })
                .collect()
        }),
        edges: r
            .edges
            .iter()
            .map(|e| EdgeView {
                source: e.source,
                target: e.target,
                p_given: e.p_given.map(sig6),
                p_given_not: e.p_given_not.map(sig6),
            })
            .collect(),
        orbits: &r.orbits,
        weak_components: &r.weak_components,
        invariant_blocks: &r.invariant_blocks,
        attractors: r.attractors.iter().map(AttractorView::from).collect(),
        annotations: &r.annotations,
        warnings: &r.warnings,
    };
    let mut out = serde_json::to_vec_pretty(&view).expect("report view is always serializable");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::CausalGraph;
    use crate::ingest::VariableCatalog;
    use serde_json::Value;

    fn g3_report() -> AnalysisReport {
        let cat = VariableCatalog::from_names(["a", "b", "c"]).unwrap();
        let g = CausalGraph::new(cat, [(1, 2), (2, 3), (3, 2)]).unwrap();
        AnalysisReport::build(ConfigEcho::graph_only(), &g, None)
    }

    #[test]
    fn deterministic_bytes() {
        assert_eq!(to_json(&g3_report()), to_json(&g3_report()));
    }

    #[test]
    fn top_level_keys_in_order() {
        let text = String::from_utf8(to_json(&g3_report())).unwrap();
        let keys = [
            "\"config\"",
            "\"variables\"",
            "\"correlations\"",
            "\"pairs\"",
            "\"edges\"",
            "\"orbits\"",
            "\"weak_components\"",
            "\"invariant_blocks\"",
            "\"attractors\"",
            "\"annotations\"",
            "\"warnings\"",
        ];
        let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn g3_attractor_entry() {
        let v: Value = serde_json::from_slice(&to_json(&g3_report())).unwrap();
        let a = &v["attractors"][0];
        assert_eq!(a["attractor"], serde_json::json!([2, 3]));
        assert_eq!(a["basin"], serde_json::json!([1, 2, 3]));
        assert_eq!(a["witness"], serde_json::json!([2, 3]));
        assert_eq!(a["campaign_target"], serde_json::json!([1]));
        assert_eq!(v["orbits"][0]["iterates"], serde_json::json!([[2], [3]]));
        assert_eq!(v["orbits"][0]["orbit"], serde_json::json!([2, 3]));
        assert_eq!(v["correlations"], Value::Null);
    }

    #[test]
    fn empty_attractor_list() {
        let cat = VariableCatalog::from_names(["a", "b"]).unwrap();
        let g = CausalGraph::new(cat, [(1, 2)]).unwrap();
        let r = AnalysisReport::build(ConfigEcho::graph_only(), &g, None);
        let text = String::from_utf8(to_json(&r)).unwrap();
        assert!(text.contains("\"attractors\": []"));
    }
}
