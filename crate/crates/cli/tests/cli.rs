//! End-to-end runs of the `syllo` binary.

use std::path::Path;
use std::process::{Command, Output};

fn syllo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syllo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn assert_ok(out: &Output) {
    assert!(
        out.status.success(),
        "exit {:?}\nstdout: {}\nstderr: {}",
        out.status.code(),
        stdout(out),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn oracle_prints_partition_and_writes_table() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("oracle");
    let out = syllo(&["oracle", "--out", out_dir.to_str().unwrap(), "--syllogism", "EA1"]);
    assert_ok(&out);
    let text = stdout(&out);
    assert!(text.contains("EA1: Oca"), "{text}");
    assert!(text.contains("27 valid / 37 NVC"), "{text}");
    let csv = std::fs::read_to_string(out_dir.join("valid-conclusions.csv")).unwrap();
    assert!(csv.starts_with("syllogism_id,response_code\n"));
    assert!(csv.contains("AA1,Aac\n"));
    assert!(out_dir.join("manifest.json").exists());

    let out = syllo(&["oracle", "--out", out_dir.to_str().unwrap(), "--no-import"]);
    assert_ok(&out);
    assert!(stdout(&out).contains("22 valid / 42 NVC"));
}

#[test]
fn oracle_rejects_bad_syllogism_with_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let out = syllo(&["oracle", "--out", dir.path().to_str().unwrap(), "--syllogism", "ZZ9"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

fn write_tiny_grid(path: &Path) {
    std::fs::write(
        path,
        "len = [2.0, 3.0]\nbroad = [0.0, 0.4]\nsystm2 = [0.0, 0.9]\nweaken = [0.5]\n",
    )
    .unwrap();
}

#[test]
fn sweep_pca_rerun_pipeline_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.toml");
    write_tiny_grid(&grid);

    let sweep_dir = dir.path().join("sweep");
    let out = syllo(&[
        "sweep",
        "--out",
        sweep_dir.to_str().unwrap(),
        "--grid",
        grid.to_str().unwrap(),
        "--runs",
        "25",
        "--seed",
        "9",
    ]);
    assert_ok(&out);
    assert!(stdout(&out).contains("swept 8 of 8"));

    let pca_dir = dir.path().join("pca");
    let out = syllo(&[
        "pca",
        "--out",
        pca_dir.to_str().unwrap(),
        "--sweep",
        sweep_dir.join("sweep.csv").to_str().unwrap(),
        "--components",
        "3",
    ]);
    assert_ok(&out);
    let pca_json = std::fs::read_to_string(pca_dir.join("pca.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&pca_json).unwrap();
    assert_eq!(parsed["explained_variance_ratio"].as_array().unwrap().len(), 3);

    // Re-running from the manifests reproduces outputs byte for byte.
    let rerun_dir = dir.path().join("sweep-rerun");
    let out = syllo(&[
        "rerun",
        sweep_dir.join("manifest.json").to_str().unwrap(),
        "--out",
        rerun_dir.to_str().unwrap(),
    ]);
    assert_ok(&out);
    let a = std::fs::read(sweep_dir.join("sweep.csv")).unwrap();
    let b = std::fs::read(rerun_dir.join("sweep.csv")).unwrap();
    assert_eq!(a, b, "rerun sweep.csv differs");

    let rerun_pca = dir.path().join("pca-rerun");
    let out = syllo(&[
        "rerun",
        pca_dir.join("manifest.json").to_str().unwrap(),
        "--out",
        rerun_pca.to_str().unwrap(),
    ]);
    assert_ok(&out);
    let a = std::fs::read(pca_dir.join("pca.json")).unwrap();
    let b = std::fs::read(rerun_pca.join("pca.json")).unwrap();
    assert_eq!(a, b, "rerun pca.json differs");
}

#[test]
fn mock_harness_runs_offline_and_feeds_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let harness_dir = dir.path().join("harness");
    let out = syllo(&[
        "harness",
        "--out",
        harness_dir.to_str().unwrap(),
        "--method",
        "generative",
        "--mock",
        "--syllogism",
        "EA1",
        "--syllogism",
        "AA1",
        "--syllogism",
        "II1",
        "--max-triples",
        "2",
        "--samples",
        "4",
    ]);
    assert_ok(&out);
    let log = std::fs::read_to_string(harness_dir.join("lm_log.jsonl")).unwrap();
    assert_eq!(log.lines().count(), 3 * 2 * 4);
    assert!(harness_dir.join("profile.csv").exists());

    // The manifest records the decoding defaults.
    let manifest = std::fs::read_to_string(harness_dir.join("manifest.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&manifest).unwrap();
    let args = &parsed["command"]["harness"];
    assert_eq!(args["temperature"], 0.5);
    assert_eq!(args["max_tokens"], 75);
    assert_eq!(args["samples"], 4);

    let analyze_dir = dir.path().join("analysis");
    let out = syllo(&[
        "analyze",
        "--out",
        analyze_dir.to_str().unwrap(),
        "--lm-log",
        &format!("mock={}", harness_dir.join("lm_log.jsonl").display()),
    ]);
    assert_ok(&out);
    let report = std::fs::read_to_string(analyze_dir.join("report.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(parsed["oracle_partition"][0], 27);
    let labels: Vec<&str> = parsed["profiles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["label"].as_str().unwrap())
        .collect();
    assert!(labels.contains(&"mock"));
    assert!(labels.contains(&"oracle-uniform"));
    assert!(analyze_dir.join("long.csv").exists());
    assert!(analyze_dir.join("accuracy.csv").exists());
}

#[test]
fn binary_mock_harness_emits_nvc_capable_predictions() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("binary");
    let out = syllo(&[
        "harness",
        "--out",
        out_dir.to_str().unwrap(),
        "--method",
        "binary",
        "--mock",
        "--syllogism",
        "II1",
        "--syllogism",
        "EA1",
        "--max-triples",
        "1",
    ]);
    assert_ok(&out);
    let items = std::fs::read_to_string(out_dir.join("items.csv")).unwrap();
    assert!(items.contains("II1,0,NVC"), "{items}");
    assert!(items.contains("EA1,0,Oca"), "{items}");
}

#[test]
fn simulate_then_project_into_sweep_space() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.toml");
    write_tiny_grid(&grid);
    let sweep_dir = dir.path().join("sweep");
    assert_ok(&syllo(&[
        "sweep",
        "--out",
        sweep_dir.to_str().unwrap(),
        "--grid",
        grid.to_str().unwrap(),
        "--runs",
        "20",
    ]));
    let sim_dir = dir.path().join("sim");
    assert_ok(&syllo(&[
        "simulate",
        "--out",
        sim_dir.to_str().unwrap(),
        "--systm2",
        "0.8",
        "--runs",
        "30",
        "--seed",
        "4",
    ]));
    let pca_dir = dir.path().join("pca");
    let out = syllo(&[
        "pca",
        "--out",
        pca_dir.to_str().unwrap(),
        "--sweep",
        sweep_dir.join("sweep.csv").to_str().unwrap(),
        "--components",
        "2",
        "--project",
        &format!("sim={}", sim_dir.join("profile.csv").display()),
    ]);
    assert_ok(&out);
    let proj = std::fs::read_to_string(pca_dir.join("projections.csv")).unwrap();
    let mut lines = proj.lines();
    assert_eq!(lines.next().unwrap(), "name,pc1,pc2");
    let row = lines.next().unwrap();
    assert!(row.starts_with("sim,"), "{row}");
    let coords: Vec<f64> = row[4..].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(coords.len(), 2);
    assert!(coords.iter().all(|c| c.is_finite()));
}
