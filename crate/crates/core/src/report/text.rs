use std::fmt::Write;

use super::{AnalysisReport, AnnotationKind};
use crate::dynamics::NodeSet;
use crate::ingest::VariableCatalog;

fn names(catalog: &VariableCatalog, s: &NodeSet) -> String {
    if s.is_empty() {
        return "{}".to_string();
    }
    let parts: Vec<String> = s
        .iter()
        .map(|id| format!("{} ({id})", catalog.name(id).unwrap_or("?")))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Plain-text digest: attractors with their basins and campaign targets,
/// endogamous blocks, weak components and nodes without an orbit.
pub fn summary_text(r: &AnalysisReport) -> String {
    let cat = &r.catalog;
    let mut out = String::new();
    let _ = writeln!(out, "nodes: {}, edges: {}", cat.len(), r.edges.len());
    if let Some(pairs) = &r.pairs {
        let _ = writeln!(out, "candidate pairs: {}", pairs.len());
    }

    if r.attractors.is_empty() {
        out.push_str("no attractors found\n");
    }
    for (k, f) in r.attractors.iter().enumerate() {
        let _ = writeln!(out, "attractor {}: {}", k + 1, names(cat, &f.attractor));
        let _ = writeln!(out, "  basin of attraction: {}", names(cat, &f.basin));
        let _ = writeln!(
            out,
            "  campaign target (basin outside the attractor): {}",
            names(cat, &f.feeders())
        );
        if !f.witness_matches() {
            let _ = writeln!(
                out,
                "  WARNING: orbit intersection over the basin is {}",
                names(cat, &f.witness)
            );
        }
    }

    for a in r
        .annotations
        .iter()
        .filter(|a| a.kind == AnnotationKind::EndogamousBlock)
    {
        let _ = writeln!(
            out,
            "endogamous block (invariant, isolated): {}",
            names(cat, &a.members)
        );
    }
    for (k, c) in r.weak_components.iter().enumerate() {
        let _ = writeln!(out, "weak component {}: {}", k + 1, names(cat, c));
    }
    for a in r
        .annotations
        .iter()
        .filter(|a| a.kind == AnnotationKind::NoOrbit)
    {
        let _ = writeln!(
            out,
            "nodes without orbit (zero reachability rows): {}",
            names(cat, &a.members)
        );
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}
