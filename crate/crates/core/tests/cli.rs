use std::path::PathBuf;
use std::process::Command;

use causal_orbits::cli::{
    analyze_table, parse_edge_list, run_analyze, run_correlate, run_correlate_with, run_graph,
    OutputFormat, RunConfig,
};
use causal_orbits::ingest::{load_table, VariableCatalog};
use causal_orbits::oracle::{paired_planted_model, synth_series};
use causal_orbits::report::{parse_bool_matrix_csv, to_dot};
use causal_orbits::screening::{binarize, correlation_matrix, orient, select_pairs};
use serde_json::Value;

const REFERENCE_EDGES: &str = include_str!("../data/overnight_stays_edges.txt");

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_causal-orbits"))
}

fn temp_file(name: &str, contents: &[u8]) -> (tempdir::Dir, PathBuf) {
    let dir = tempdir::Dir::new();
    let path = dir.0.join(name);
    std::fs::write(&path, contents).unwrap();
    (dir, path)
}

/// Minimal scratch directory removed on drop.
mod tempdir {
    use std::path::PathBuf;
    use std::sync::atomic::{AtomicUsize, Ordering};

    static NEXT: AtomicUsize = AtomicUsize::new(0);

    pub struct Dir(pub PathBuf);

    impl Dir {
        pub fn new() -> Self {
            let k = NEXT.fetch_add(1, Ordering::Relaxed);
            let p =
                std::env::temp_dir().join(format!("causal-orbits-cli-{}-{k}", std::process::id()));
            std::fs::create_dir_all(&p).unwrap();
            Dir(p)
        }
    }

    impl Drop for Dir {
        fn drop(&mut self) {
            let _ = std::fs::remove_dir_all(&self.0);
        }
    }
}

fn planted_csv(seed: u64) -> Vec<u8> {
    synth_series(&paired_planted_model(seed), 144)
        .unwrap()
        .to_csv_bytes()
}

#[test]
fn binary_analyze_is_deterministic() {
    let (_dir, path) = temp_file("series.csv", &planted_csv(5));
    let run = || bin().arg("analyze").arg(&path).output().unwrap();
    let (a, b) = (run(), run());
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["config"]["threshold"], 0.7);
    assert_eq!(v["config"]["binarize"], "above-median");
    assert_eq!(v["correlations"]["matrix"].as_array().unwrap().len(), 14);
}

#[test]
fn binary_exit_codes() {
    let (_dir, empty) = temp_file("empty.csv", b"");
    let out = bin().arg("analyze").arg(&empty).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let (_dir2, series) = temp_file("series.csv", &planted_csv(1));
    let out = bin()
        .args(["analyze", "--threshold", "1.1"])
        .arg(&series)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let (_dir3, bad_graph) = temp_file("g.txt", b"a -> b\na -> b\n");
    let out = bin()
        .arg("analyze")
        .arg("--graph")
        .arg(&bad_graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // series and --graph are mutually exclusive
    let out = bin()
        .arg("analyze")
        .arg(&series)
        .arg("--graph")
        .arg(&bad_graph)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn binary_graph_mode_formats() {
    let (_dir, path) = temp_file("edges.txt", REFERENCE_EDGES.as_bytes());
    let out = bin()
        .args(["analyze", "--format", "dot", "--graph"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("[label=").count(), 14);
    assert_eq!(dot.matches(" -> ").count(), 30);

    let out = bin()
        .args(["analyze", "--format", "text", "--graph"])
        .arg(&path)
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("campaign target"));
    assert!(text.contains("endogamous block"));

    let out = bin()
        .args(["analyze", "--format", "matrix", "--graph"])
        .arg(&path)
        .output()
        .unwrap();
    let (names, rows) = parse_bool_matrix_csv(&out.stdout).unwrap();
    assert_eq!(names.len(), 14);
    // tourist apartments (13) is a sink
    assert!(rows[12].iter().all(|&x| !x));
}

#[test]
fn binary_correlate() {
    let (_dir, path) = temp_file("series.csv", &planted_csv(2));
    let out = bin().arg("correlate").arg(&path).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 15);
    assert!(text.lines().skip(1).all(|l| l.split(',').count() == 15));
}

#[test]
fn g3_edge_list() {
    let cfg = RunConfig::default();
    let out = run_graph(&cfg, "a -> b\nb -> c\nc -> b\n");
    assert_eq!(out.status, 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["attractors"][0]["attractor"], serde_json::json!([2, 3]));
    assert_eq!(v["attractors"][0]["basin"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["variables"][0]["name"], "a");
    assert_eq!(v["config"]["mode"], "graph");
    assert_eq!(v["pairs"], Value::Null);
}

#[test]
fn correlate_small_catalogs() {
    let cfg = RunConfig {
        format: OutputFormat::Matrix,
        ..RunConfig::default()
    };
    let single = VariableCatalog::from_names(["solo"]).unwrap();
    let out = run_correlate_with(&cfg, b"period,solo\n2006-01,1\n2006-02,3\n", &single);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "variable,solo\nsolo,1\n"
    );

    let pair = VariableCatalog::from_names(["x", "flat"]).unwrap();
    let json_cfg = RunConfig {
        format: OutputFormat::Json,
        ..RunConfig::default()
    };
    let out = run_correlate_with(
        &json_cfg,
        b"period,x,flat\n2006-01,1,5\n2006-02,3,5\n2006-03,2,5\n",
        &pair,
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["matrix"], serde_json::json!([[1.0, null], [null, null]]));
    assert_eq!(
        v["undefined"],
        serde_json::json!([[false, true], [true, true]])
    );

    assert_eq!(run_correlate(&cfg, b"").status, 1);
}

/// Correlate, screen and orient by hand, then feed the edges through the
/// edge-list path: the dynamics sections must match the one-shot pipeline.
#[test]
fn pipeline_decomposes() {
    let csv = planted_csv(9);
    let cfg = RunConfig::default();
    let whole: Value = serde_json::from_slice(&run_analyze(&cfg, &csv).stdout).unwrap();

    let table = load_table(csv.as_slice(), &causal_orbits::ingest::builtin_catalog()).unwrap();
    let m = correlation_matrix(&table).unwrap();
    let corr: Value = serde_json::from_slice(
        &run_correlate(
            &RunConfig {
                format: OutputFormat::Json,
                ..cfg.clone()
            },
            &csv,
        )
        .stdout,
    )
    .unwrap();
    assert_eq!(corr["matrix"], whole["correlations"]["matrix"]);

    let pairs = select_pairs(&m, cfg.threshold, cfg.absolute).unwrap();
    let events = binarize(&table, cfg.binarize).unwrap();
    let edges = orient(&pairs, &events, cfg.margin).unwrap().edges;
    let mut listing = String::new();
    for e in &edges {
        listing.push_str(&format!("{} -> {}\n", e.source, e.target));
    }
    let parts: Value = serde_json::from_slice(&run_graph(&cfg, &listing).stdout).unwrap();
    for key in [
        "orbits",
        "weak_components",
        "invariant_blocks",
        "attractors",
        "annotations",
    ] {
        assert_eq!(parts[key], whole[key], "section {key}");
    }

    let (graph, report) = analyze_table(&cfg, &table).unwrap();
    let reparsed = parse_edge_list(&listing).unwrap();
    assert_eq!(
        to_dot(&graph, &report.attractors),
        to_dot(&reparsed, &report.attractors)
    );
}
