use std::path::PathBuf;
use std::process::{Command, Output};

use quasipack::io::import_packing;

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasipack"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn orbit_prints_cardinality_and_points() {
    let out = run(&["orbit", "--group", "icosahedral", "--seed", "1,1,1"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("cardinality: 20"));
    assert_eq!(lines.count(), 20);

    let out = run(&["orbit", "--group", "dihedral", "--m", "5", "--seed", "-1.1,1.3"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("cardinality: 10\n"));
}

#[test]
fn dihedral_orbit_without_m_is_an_input_error() {
    let out = run(&["orbit", "--group", "dihedral", "--seed", "1,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generate_then_render() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    let svg = dir.path().join("p.svg");
    let out = run(&[
        "generate",
        "--config",
        config("decagon.json").to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
        "--radius",
        "4",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let p = import_packing(&csv).unwrap();
    assert!(p.find(&[0; 5]).is_some());
    assert!(p.points.iter().all(|q| q.physical.iter().map(|c| c * c).sum::<f64>() <= 16.0 + 1e-9));

    let out = run(&["render", "--in", csv.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<circle").count(), p.len());
}

#[test]
fn json_output_matches_csv_output() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    let json = dir.path().join("p.json");
    for path in [&csv, &json] {
        let out = run(&[
            "generate",
            "--config",
            config("fibonacci.json").to_str().unwrap(),
            "--out",
            path.to_str().unwrap(),
            "--format",
            if path == &json { "json" } else { "csv" },
        ]);
        assert!(out.status.success());
    }
    assert_eq!(import_packing(&csv).unwrap(), import_packing(&json).unwrap());
}

#[test]
fn limit_exceeded_writes_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    let out = run(&[
        "generate",
        "--config",
        config("decagonal.json").to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
        "--max-points",
        "25",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(import_packing(&csv).unwrap().len(), 25);
}

#[test]
fn icosahedral_render_down_fivefold_axis() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    let svg = dir.path().join("p.svg");
    let out = run(&[
        "generate",
        "--config",
        config("icosahedral.json").to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
        "--radius",
        "5",
    ]);
    assert!(out.status.success());
    // a 3-d packing needs an axis
    let out = run(&["render", "--in", csv.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&[
        "render",
        "--in",
        csv.to_str().unwrap(),
        "--out",
        svg.to_str().unwrap(),
        "--axis",
        "fivefold",
    ]);
    assert!(out.status.success());
}

#[test]
fn malformed_config_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, "{\n  \"group\": \"dihedral\",\n  \"m\": 5,\n  \"shells\": [[1, 0]\n}\n").unwrap();
    let out = run(&["check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("bad.json"), "{stderr}");
}

#[test]
fn check_passes_on_decagon() {
    let out = run(&[
        "check",
        "--config",
        config("decagon.json").to_str().unwrap(),
        "--samples",
        "500",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().trim_end().ends_with("result: PASS"));
}
