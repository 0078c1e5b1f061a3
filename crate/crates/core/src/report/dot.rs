use std::fmt::Write;

use crate::dynamics::{AttractorFinding, CausalGraph};
use crate::error::{Error, Result};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz digraph with catalog ids as node ids and names as labels.
/// Attractor members are filled, other basin members dashed; both carry a
/// `class` attribute (`attractor` or `basin`).
pub fn to_dot(g: &CausalGraph, findings: &[AttractorFinding]) -> String {
    let mut out = String::from("digraph causal {\n    node [shape=box];\n");
    for v in g.catalog().entries() {
        let style = if findings.iter().any(|f| f.attractor.contains(v.id)) {
            ", class=\"attractor\", style=filled, fillcolor=\"#f2c14e\""
        } else if findings.iter().any(|f| f.basin.contains(v.id)) {
            ", class=\"basin\", style=dashed"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "    {} [label=\"{}\"{}];",
            v.id,
            escape(&v.name),
            style
        );
    }
    for (s, t) in g.edges() {
        let _ = writeln!(out, "    {s} -> {t};");
    }
    out.push_str("}\n");
    out
}

/// Reads back the `a -> b;` statements written by [`to_dot`].
pub fn parse_dot_edges(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let Some((lhs, rhs)) = line.split_once("->") else {
            continue;
        };
        let parse = |s: &str| {
            s.trim()
                .trim_end_matches(';')
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::EdgeList {
                    line: i + 1,
                    message: format!("cannot read DOT edge {:?}", line.trim()),
                })
        };
        edges.push((parse(lhs)?, parse(rhs)?));
    }
    Ok(edges)
}
