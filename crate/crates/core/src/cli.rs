//! Pipeline orchestration behind the command-line tool.
//!
//! Each `run_*` function takes its input as bytes and returns the exit status
//! and standard-output payload, so the binary is a thin wrapper and every
//! path is testable in-process.

use serde::Serialize;

use crate::dynamics::{reachability_matrix, CausalGraph};
use crate::error::{Error, Result};
use crate::ingest::{builtin_catalog, load_table, TimeSeriesTable, VariableCatalog};
use crate::report::{
    matrix_csv, summary_text, to_dot, to_json, AnalysisReport, ConfigEcho, ScreeningOutput,
};
use crate::screening::{
    binarize, correlation_matrix, orient, select_pairs, BinarizeRule, CorrelationMatrix,
    DEFAULT_THRESHOLD,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Dot,
    Text,
    /// CSV matrix: reachability for analyses, coefficients for `correlate`.
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputMode {
    #[default]
    SeriesCsv,
    EdgeList,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub threshold: f64,
    pub binarize: BinarizeRule,
    pub margin: f64,
    pub absolute: bool,
    pub format: OutputFormat,
    pub input: InputMode,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            threshold: DEFAULT_THRESHOLD,
            binarize: BinarizeRule::AboveMedian,
            margin: 0.0,
            absolute: false,
            format: OutputFormat::Json,
            input: InputMode::SeriesCsv,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.threshold > 0.0 && self.threshold <= 1.0) {
            return Err(Error::InvalidThreshold(self.threshold));
        }
        if !(self.margin.is_finite() && self.margin >= 0.0) {
            return Err(Error::InvalidMargin(self.margin));
        }
        Ok(())
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            mode: "series",
            threshold: Some(self.threshold),
            binarize: Some(self.binarize),
            margin: Some(self.margin),
            absolute: Some(self.absolute),
        }
    }
}

/// Exit status, standard output and standard-error lines of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub status: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<String>,
}

impl RunOutcome {
    fn ok(stdout: Vec<u8>, stderr: Vec<String>) -> Self {
        Self {
            status: EXIT_OK,
            stdout,
            stderr,
        }
    }

    fn fail(err: &Error) -> Self {
        let status = match err {
            Error::InvalidThreshold(_) | Error::InvalidMargin(_) => EXIT_CONFIG,
            _ => EXIT_INPUT,
        };
        Self {
            status,
            stdout: Vec::new(),
            stderr: vec![format!("error: {err}")],
        }
    }

    fn config(message: String) -> Self {
        Self {
            status: EXIT_CONFIG,
            stdout: Vec::new(),
            stderr: vec![format!("error: {message}")],
        }
    }
}

/// Screening plus dynamics on a loaded table: correlations, pairs at the
/// threshold, conditioning-factor orientation, then the graph analysis.
pub fn analyze_table(
    config: &RunConfig,
    table: &TimeSeriesTable,
) -> Result<(CausalGraph, AnalysisReport)> {
    config.validate()?;
    let correlations = correlation_matrix(table)?;
    let pairs = select_pairs(&correlations, config.threshold, config.absolute)?;
    let events = binarize(table, config.binarize)?;
    let orientation = orient(&pairs, &events, config.margin)?;
    let graph = CausalGraph::new(
        table.catalog().clone(),
        orientation.edges.iter().map(|e| (e.source, e.target)),
    )?;
    let screening = ScreeningOutput {
        correlations,
        pairs,
        orientation,
    };
    let report = AnalysisReport::build(config.echo(), &graph, Some(screening));
    Ok((graph, report))
}

fn render(graph: &CausalGraph, report: &AnalysisReport, format: OutputFormat) -> Result<Vec<u8>> {
    Ok(match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Dot => to_dot(graph, &report.attractors).into_bytes(),
        OutputFormat::Text => summary_text(report).into_bytes(),
        OutputFormat::Matrix => matrix_csv(&reachability_matrix(graph), graph.catalog())?,
    })
}

/// Full pipeline on a series CSV (columns bound against the builtin catalog).
pub fn run_analyze(config: &RunConfig, source: &[u8]) -> RunOutcome {
    run_analyze_with(config, source, &builtin_catalog())
}

/// As [`run_analyze`], binding columns against `catalog`.
pub fn run_analyze_with(
    config: &RunConfig,
    source: &[u8],
    catalog: &VariableCatalog,
) -> RunOutcome {
    if let Err(e) = config.validate() {
        return RunOutcome::fail(&e);
    }
    let result = load_table(source, catalog)
        .and_then(|table| analyze_table(config, &table))
        .and_then(|(graph, report)| Ok((render(&graph, &report, config.format)?, report.warnings)));
    match result {
        Ok((bytes, warnings)) => RunOutcome::ok(
            bytes,
            warnings
                .into_iter()
                .map(|w| format!("warning: {w}"))
                .collect(),
        ),
        Err(e) => RunOutcome::fail(&e),
    }
}

/// Dynamics-only analysis of an edge-list file.
pub fn run_graph(config: &RunConfig, source: &str) -> RunOutcome {
    let result = parse_edge_list(source).and_then(|graph| {
        let report = AnalysisReport::build(ConfigEcho::graph_only(), &graph, None);
        render(&graph, &report, config.format).map(|b| (b, report.warnings))
    });
    match result {
        Ok((bytes, warnings)) => RunOutcome::ok(
            bytes,
            warnings
                .into_iter()
                .map(|w| format!("warning: {w}"))
                .collect(),
        ),
        Err(e) => RunOutcome::fail(&e),
    }
}

#[derive(Serialize)]
struct CorrelationJson<'a> {
    variables: &'a [crate::ingest::Variable],
    matrix: Vec<Vec<Option<f64>>>,
    undefined: Vec<Vec<bool>>,
}

fn correlation_json(m: &CorrelationMatrix) -> Vec<u8> {
    let rows = m.rows();
    let view = CorrelationJson {
        variables: m.catalog().entries(),
        undefined: rows
            .iter()
            .map(|r| r.iter().map(Option::is_none).collect())
            .collect(),
        matrix: rows
            .into_iter()
            .map(|r| r.into_iter().map(|c| c.map(crate::report::sig6)).collect())
            .collect(),
    };
    let mut out = serde_json::to_vec_pretty(&view).expect("serializable");
    out.push(b'\n');
    out
}

/// Correlation matrix of a series CSV, as CSV (`matrix`) or JSON.
pub fn run_correlate(config: &RunConfig, source: &[u8]) -> RunOutcome {
    run_correlate_with(config, source, &builtin_catalog())
}

pub fn run_correlate_with(
    config: &RunConfig,
    source: &[u8],
    catalog: &VariableCatalog,
) -> RunOutcome {
    if let Err(e) = config.validate() {
        return RunOutcome::fail(&e);
    }
    if matches!(config.format, OutputFormat::Dot | OutputFormat::Text) {
        return RunOutcome::config(
            "correlate supports only the matrix and json formats".to_string(),
        );
    }
    let result = load_table(source, catalog)
        .and_then(|t| correlation_matrix(&t))
        .and_then(|m| match config.format {
            OutputFormat::Json => Ok(correlation_json(&m)),
            _ => matrix_csv(&m.rows(), m.catalog()),
        });
    match result {
        Ok(bytes) => RunOutcome::ok(bytes, Vec::new()),
        Err(e) => RunOutcome::fail(&e),
    }
}

/// Parses the edge-list format.
///
/// * `source -> target` per line (`→` also accepted); `#` starts a comment;
///   blank lines are ignored.
/// * `node <name>` declares a node. When any node is declared, the declared
///   list (in order) is the catalog and every endpoint must name one of them.
/// * Without declarations, endpoints are resolved against the builtin
///   catalog (by id or case-insensitive name) if they all match it;
///   otherwise nodes are catalogued in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<CausalGraph> {
    let mut declared: Vec<String> = Vec::new();
    let mut raw_edges: Vec<(usize, String, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::EdgeList {
            line: lineno,
            message,
        };
        let arrow = line
            .find("->")
            .map(|p| (p, 2))
            .or_else(|| line.find('→').map(|p| (p, '→'.len_utf8())));
        match arrow {
            Some((p, w)) => {
                let (src, dst) = (line[..p].trim(), line[p + w..].trim());
                if src.is_empty() || dst.is_empty() || dst.contains("->") || dst.contains('→') {
                    return Err(err(format!("expected `source -> target`, found {line:?}")));
                }
                raw_edges.push((lineno, src.to_string(), dst.to_string()));
            }
            None => match line.strip_prefix("node ").map(str::trim) {
                Some(name) if !name.is_empty() => {
                    if declared.iter().any(|d| d.eq_ignore_ascii_case(name)) {
                        return Err(err(format!("node {name:?} declared twice")));
                    }
                    declared.push(name.to_string());
                }
                _ => {
                    return Err(err(format!(
                        "expected `source -> target` or `node <name>`, found {line:?}"
                    )))
                }
            },
        }
    }

    let builtin = builtin_catalog();
    let resolve_in = |cat: &VariableCatalog, tok: &str| -> Option<usize> {
        cat.find(tok)
            .or_else(|| tok.parse::<usize>().ok().filter(|&id| cat.contains(id)))
    };
    let catalog = if !declared.is_empty() {
        VariableCatalog::from_names(declared)?
    } else if raw_edges
        .iter()
        .all(|(_, s, t)| resolve_in(&builtin, s).is_some() && resolve_in(&builtin, t).is_some())
    {
        builtin
    } else {
        let mut names: Vec<&str> = Vec::new();
        for (_, s, t) in &raw_edges {
            for tok in [s.as_str(), t.as_str()] {
                if !names.iter().any(|n| n.eq_ignore_ascii_case(tok)) {
                    names.push(tok);
                }
            }
        }
        VariableCatalog::from_names(names)?
    };

    let mut edges = Vec::with_capacity(raw_edges.len());
    let mut seen = std::collections::HashSet::new();
    for (line, s, t) in &raw_edges {
        let lookup = |tok: &str| {
            resolve_in(&catalog, tok).ok_or_else(|| Error::EdgeList {
                line: *line,
                message: format!("unknown node {tok:?}"),
            })
        };
        let edge = (lookup(s)?, lookup(t)?);
        if !seen.insert(edge) {
            return Err(Error::EdgeList {
                line: *line,
                message: format!("duplicate edge {s} -> {t}"),
            });
        }
        edges.push(edge);
    }
    CausalGraph::new(catalog, edges)
}
