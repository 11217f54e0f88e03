//! Binary-level behavior: argument handling, output shapes, exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BARBELL: &str = "0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n2 3\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_commcent"))
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn stats_prints_parseable_json() {
    let tmp = tempfile::tempdir().unwrap();
    let edges = write(tmp.path(), "g.edges", "0 1\n1 2\n2 0\n2 2\n0 1\n9 8\n");
    let out = bin().arg("stats").arg(&edges).output().unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["ingest"]["self_loops_dropped"], 1);
    assert_eq!(json["ingest"]["duplicate_edges_dropped"], 1);
    assert_eq!(json["full_graph"]["nodes"], 5);
    assert_eq!(json["lcc"]["nodes"], 3);
    assert_eq!(json["lcc"]["transitivity"], 1.0);
    assert_eq!(json["lcc"]["distances_approximate"], false);
}

#[test]
fn stats_sampling_flags_approximation() {
    let tmp = tempfile::tempdir().unwrap();
    let edges = write(tmp.path(), "p.edges", "0 1\n1 2\n2 3\n3 4\n4 5\n");
    let out = bin()
        .args(["stats", edges.to_str().unwrap(), "--sample-paths", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["lcc"]["distances_approximate"], true);
    assert_eq!(json["lcc"]["distance_sources"], 3);
}

#[test]
fn detect_writes_partition_usable_by_centrality() {
    let tmp = tempfile::tempdir().unwrap();
    let edges = write(tmp.path(), "barbell.edges", BARBELL);
    let part = tmp.path().join("barbell.part");
    let out = bin()
        .args(["detect", edges.to_str().unwrap(), "--out", part.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("communities=2"));

    let out = bin()
        .args([
            "centrality",
            edges.to_str().unwrap(),
            "--measure",
            "chb",
            "--partition",
            part.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# measure=chb"));
    assert!(text.contains("2,7.0") && text.contains("3,7.0"), "{text}");
}

#[test]
fn detect_without_out_streams_partition() {
    let tmp = tempfile::tempdir().unwrap();
    let edges = write(tmp.path(), "barbell.edges", BARBELL);
    let out = bin().args(["detect", edges.to_str().unwrap()]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0 0\n1 0\n2 0\n3 1\n4 1\n5 1\n");
    assert!(String::from_utf8_lossy(&out.stderr).contains("communities=2"));
}

#[test]
fn centrality_all_writes_ten_files() {
    let tmp = tempfile::tempdir().unwrap();
    let edges = write(tmp.path(), "barbell.edges", BARBELL);
    let dir = tmp.path().join("scores");
    let out = bin()
        .args([
            "centrality",
            edges.to_str().unwrap(),
            "--measure",
            "all",
            "--out",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let count = fs::read_dir(&dir).unwrap().count();
    assert_eq!(count, 10);
    for id in ["degree", "betweenness", "closeness", "katz", "pagerank", "bridging", "chb", "pc", "cbm", "nnc"] {
        let path = dir.join(format!("centrality_{id}.csv"));
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.contains(&format!("# measure={id}")));
        assert!(text.contains("node_label,value"));
    }
}

#[test]
fn compare_honors_env_output_dir() {
    let tmp = tempfile::tempdir().unwrap();
    let edges = write(tmp.path(), "barbell.edges", BARBELL);
    let out_root = tmp.path().join("from_env");
    let out = bin()
        .args(["compare", edges.to_str().unwrap()])
        .env("COMMCENT_OUT_DIR", &out_root)
        .current_dir(tmp.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out_root.join("barbell/report.json").is_file());
}

#[test]
fn compare_emit_flags_prune_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let edges = write(tmp.path(), "barbell.edges", BARBELL);
    let dir = tmp.path().join("out");
    let out = bin()
        .args([
            "compare",
            edges.to_str().unwrap(),
            "--out",
            dir.to_str().unwrap(),
            "--no-svg",
            "--no-csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let net = dir.join("barbell");
    assert!(net.join("report.json").is_file());
    assert!(net.join("partition.txt").is_file());
    assert!(!net.join("tau.svg").exists());
    assert!(!net.join("tau.csv").exists());
    assert!(!net.join("centrality_degree.csv").exists());
}

#[test]
fn exit_codes_distinguish_error_classes() {
    let tmp = tempfile::tempdir().unwrap();
    let edges = write(tmp.path(), "barbell.edges", BARBELL);

    // 0: success paths covered elsewhere; help/version here.
    assert_eq!(bin().arg("--help").output().unwrap().status.code(), Some(0));
    assert_eq!(bin().arg("--version").output().unwrap().status.code(), Some(0));

    // 1: usage problems, bad flags, out-of-range parameters.
    assert_eq!(bin().arg("frobnicate").output().unwrap().status.code(), Some(1));
    assert_eq!(bin().output().unwrap().status.code(), Some(1));
    let bad_measure = bin()
        .args(["centrality", edges.to_str().unwrap(), "--measure", "nope"])
        .output()
        .unwrap();
    assert_eq!(bad_measure.status.code(), Some(1));
    let bad_p = bin()
        .args(["compare", edges.to_str().unwrap(), "--rbo-p", "1.5"])
        .current_dir(tmp.path())
        .output()
        .unwrap();
    assert_eq!(bad_p.status.code(), Some(1));

    // 2: data problems.
    let missing = bin().args(["stats", "no-such-file.edges"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let empty = write(tmp.path(), "empty.edges", "# only comments\n");
    let out = bin().args(["stats", empty.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let short_part = write(tmp.path(), "short.part", "0 0\n1 0\n");
    let out = bin()
        .args([
            "centrality",
            edges.to_str().unwrap(),
            "--measure",
            "pc",
            "--partition",
            short_part.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // 3: numeric failure (Katz attenuation far beyond 1/lambda_max).
    let out = bin()
        .args([
            "centrality",
            edges.to_str().unwrap(),
            "--measure",
            "katz",
            "--katz-s",
            "10",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn suite_reports_failures_and_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "barbell.edges", BARBELL);
    let manifest = write(
        tmp.path(),
        "manifest.txt",
        "barbell barbell.edges\nghost missing.edges\n",
    );
    let dir = tmp.path().join("out");
    let out = bin()
        .args(["suite", manifest.to_str().unwrap(), "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("barbell: ok"));
    assert!(text.contains("ghost: FAILED"));
    assert!(dir.join("suite_summary.json").is_file());
    assert!(dir.join("barbell/report.json").is_file());

    let all_good = write(tmp.path(), "good.txt", "barbell barbell.edges\n");
    let out = bin()
        .args(["suite", all_good.to_str().unwrap(), "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
