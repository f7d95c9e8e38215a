//! End-to-end runs of the compiled binary on the bundled kite graph.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_adasim"))
}

fn kite() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/kite.edgelist")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn stats_reports_counts() {
    let out = run(&["stats", kite().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("10"), "{text}");
    assert!(text.contains("18"), "{text}");
}

#[test]
fn stats_json_parses() {
    let out = run(&["stats", kite().to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["node_count"], 10);
    assert_eq!(value["edge_count"], 18);
}

#[test]
fn missing_file_fails_naming_path() {
    let out = run(&["stats", "/nonexistent/graph.edgelist"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("/nonexistent/graph.edgelist"), "{err}");
}

#[test]
fn default_seed_is_announced() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "split",
        kite().to_str().unwrap(),
        "--ratio",
        "0.3",
        "--out",
        dir.path().join("s").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("42"), "{err}");
}

#[test]
fn full_stage_chain() {
    let dir = tempfile::tempdir().unwrap();
    let d = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let graph = kite();
    let graph = graph.to_str().unwrap();

    let out = run(&[
        "split", graph, "--ratio", "0.4", "--seed", "9", "--out", &d("split"),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = run(&[
        "walk", graph, "--walks-per-node", "10", "--walk-length", "40", "--seed", "9",
        "--out", &d("walks.txt"),
    ]);
    assert!(out.status.success());

    let out = run(&[
        "embed", &d("walks.txt"), "--dim", "16", "--seed", "9", "--out", &d("emb.txt"),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = run(&[
        "train", graph, "--split-dir", &d("split"), "--embeddings", &d("emb.txt"),
        "--seed", "9", "--out", &d("model.txt"), "--trace", &d("trace.csv"),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(fs::read_to_string(d("model.txt")).unwrap().starts_with("p="));
    assert!(fs::read_to_string(d("trace.csv")).unwrap().starts_with("epoch,loss"));

    // score positives and negatives together so AUC is defined
    let pos = fs::read_to_string(dir.path().join("split/positives.csv")).unwrap();
    let neg = fs::read_to_string(dir.path().join("split/negatives.csv")).unwrap();
    let mut all = pos;
    all.push_str(neg.strip_prefix("u,v,label\n").unwrap());
    fs::write(dir.path().join("pairs.csv"), all).unwrap();

    let out = run(&[
        "score", graph, "--embeddings", &d("emb.txt"), "--model", &d("model.txt"),
        "--pairs", &d("pairs.csv"), "--out", &d("scored.csv"),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = run(&["eval", &d("scored.csv"), "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let auc = value["auc"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&auc));
}

#[test]
fn pipeline_writes_artifacts_and_is_reproducible() {
    let run_pipeline = |dir: &Path| {
        let out = run(&[
            "pipeline",
            kite().to_str().unwrap(),
            "--methods",
            "adasim,cosine",
            "--ratio",
            "0.4",
            "--folds",
            "2",
            "--repeats",
            "2",
            "--seed",
            "5",
            "--dim",
            "8",
            "--walk-length",
            "20",
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        stdout(&out)
    };
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let text = run_pipeline(dir_a.path());
    assert!(text.contains("AdaSim"), "{text}");
    assert!(text.contains("Cosine"), "{text}");
    run_pipeline(dir_b.path());

    for file in ["split/positives.csv", "split/negatives.csv", "split/subgraph.edgelist",
                 "embeddings.txt", "model.txt", "trace.csv"] {
        let a = fs::read(dir_a.path().join(file)).unwrap();
        let b = fs::read(dir_b.path().join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between identical runs");
    }

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir_a.path().join("run.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["seed"], 5);
    assert_eq!(manifest["results"].as_array().unwrap().len(), 2);
}

#[test]
fn pipeline_method_selection() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "pipeline",
        kite().to_str().unwrap(),
        "--methods",
        "adasim,cosine",
        "--ratio",
        "0.4",
        "--folds",
        "2",
        "--repeats",
        "1",
        "--seed",
        "3",
        "--dim",
        "8",
        "--walk-length",
        "20",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("run.json")).unwrap()).unwrap();
    let methods: Vec<&str> = manifest["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["method"].as_str().unwrap())
        .collect();
    assert_eq!(methods, vec!["AdaSim", "Cosine"]);
}

#[test]
fn sweep_penalty_writes_grid() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    let out = run(&[
        "sweep", "penalty",
        kite().to_str().unwrap(),
        "--min", "-50", "--max", "50", "--step", "1",
        "--ratio", "0.4", "--dim", "8", "--walk-length", "20",
        "--seed", "5", "--out", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 102); // header + 101 grid points
    assert!(text.starts_with("p,auc\n"));
}

#[test]
fn sweep_unknown_kind_is_usage_error() {
    let out = run(&["sweep", "bogus"]);
    assert!(!out.status.success());
}

#[test]
fn figure_correlation_emits_90_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("corr.csv");
    let out = run(&[
        "figure", "correlation",
        kite().to_str().unwrap(),
        "--dim", "16", "--walk-length", "40", "--seed", "5",
        "--out", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 91); // header + 18 edges x 5 operators
}
