use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kochawave")).args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kochawave")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<(u64, i64, i64)> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), ["k", "a", "b"]);
    r.deserialize().map(|x| x.unwrap()).collect()
}

#[test]
fn numeric_csv_has_seventeen_rows() {
    let o = run(&["generate", "--construction", "numeric", "--n", "2", "--format", "csv"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 17);
    // at scale 9 the first segment of K_1 is spread over four steps
    assert_eq!(&rows[..5], &[(0, 0, 0), (1, 1, 0), (2, 2, 1), (3, 2, 0), (4, 3, 0)]);
    assert_eq!(rows[16], (16, 9, 0));
    let seg = run(&["generate", "--construction", "segments", "--n", "2", "--format", "csv"]);
    assert_eq!(csv_rows(&stdout(&seg)), rows);
}

#[test]
fn zeroth_iterate_is_the_base() {
    let o = run(&["generate", "--n", "0"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "kochawave-vertices/1");
    assert_eq!(v["count"], 2);
    assert_eq!(v["vertices"], serde_json::json!([[0, 0], [1, 0]]));
    assert_eq!(v["config"]["max_n"], 12);
    assert_eq!(v["config"]["construction"], "segments");
}

#[test]
fn lsystem_svg_matches_segments_svg() {
    let a = run(&["generate", "--construction", "lsystem", "--n", "3", "--format", "svg"]);
    let b = run(&["generate", "--construction", "segments", "--n", "3", "--format", "svg"]);
    let c = run(&["generate", "--construction", "numeric", "--n", "3", "--format", "svg"]);
    assert!(a.status.success() && b.status.success());
    assert!(stdout(&a).starts_with("<?xml"));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn triangles_come_in_threes() {
    let o = run(&["generate", "--construction", "triangles", "--n", "2", "--format", "csv"]);
    assert_eq!(csv_rows(&stdout(&o)).len(), 3 * 16);
    let j = run(&["generate", "--construction", "triangles", "--n", "1"]);
    let v: Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(v["triangles"].as_array().unwrap().len(), 4);
    assert!(v.get("vertices").is_none());
}

#[test]
fn large_n_needs_the_override() {
    let o = run(&["generate", "--n", "13", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--allow-large"));
    assert!(o.stdout.is_empty());
    let o = run(&["generate", "--n", "3", "--max-n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn user_errors_exit_nonzero() {
    let o = run(&["generate", "--construction", "spline"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["generate", "--n", "1", "--output", "/nonexistent/dir/k.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot write"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["a.csv", "b.csv"] {
        let p = dir.path().join(f);
        let o =
            run(&["generate", "--construction", "numeric", "--n", "6", "--format", "csv", "-o", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.csv")).unwrap());
    assert_eq!(a.iter().filter(|&&c| c == b'\n').count(), 4usize.pow(6) + 2);
}

#[test]
fn dimension_only_run() {
    let o = run(&["verify", "--only", "dimension", "--tol", "1e-12"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "kochawave-verify/1");
    assert_eq!(v["config"]["tol"], 1e-12);
    assert_eq!(v["config"]["n"], 5);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    let d: f64 = checks[0]["actual"].as_str().unwrap().parse().unwrap();
    assert!((d - 1.5187).abs() < 5e-4);
}

#[test]
fn injected_fault_is_named() {
    let o = run(&["verify", "--n", "3", "--only", "equivalence", "--inject-fault", "turtle-rule"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("FAILED equivalence"));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["config"]["fault"], "turtle-rule");
    let o = run(&["verify", "--inject-fault", "cosmic-ray"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_check_is_an_error() {
    let o = run(&["verify", "--only", "colour"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("colour"));
}

#[test]
fn triangular_tessellation_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["tessellate", "--scheme", "triangular", "--n", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("covering.json")).unwrap()).unwrap();
    assert_eq!(v["schema"], "kochawave-covering/1");
    assert_eq!(v["report"]["pass"], true);
    assert_eq!(v["config"]["samples"], 100_000);
    assert_eq!(v["config"]["window"], serde_json::json!([0, 0, 2, 2]));
    assert!(v["config"]["epsilon"].as_f64().unwrap() > 0.0);
    assert!(v["config"]["k_range"].is_null());
    let svg = std::fs::read_to_string(dir.path().join("covering.svg")).unwrap();
    assert!(svg.contains("<g id=\"window\""));
}

#[test]
fn dart_tessellation_is_scale_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["tessellate", "--scheme", "dart", "--k-range", "-2..1", "-o", "dart"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("dart.json")).unwrap()).unwrap();
    assert_eq!(v["config"]["k_range"], serde_json::json!([-2, 1]));
    let scales: std::collections::BTreeSet<i64> =
        v["covering"]["placements"].as_array().unwrap().iter().map(|p| p["scale_exp"].as_i64().unwrap()).collect();
    assert!(scales.len() >= 3, "{scales:?}");
}

#[test]
fn failing_tessellation_reports_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["tessellate", "--scheme", "rhomboidal", "--k-range", "0..0"]);
    assert_eq!(o.status.code(), Some(1));
    let e = stderr(&o);
    assert!(e.contains("FAILED") && e.contains("histogram {0:"), "{e}");
    assert!(dir.path().join("covering.json").exists());
}

#[test]
fn unknown_scheme_is_a_usage_error() {
    let o = run(&["tessellate", "--scheme", "penrose"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown scheme"));
}

#[test]
fn properties_table_and_json() {
    let o = run(&["properties", "--n", "2"]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert!(t.contains("17/444") && t.contains("(59/111) + (17/111)ω"));
    let o = run(&["properties", "--n", "2", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["loops"], 1);
    assert_eq!(v["report"]["volume_over_pi"], serde_json::json!({"num": "17", "den": "444"}));
}

#[test]
fn preset_renders_with_scene_dump() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("f.svg");
    let json = dir.path().join("f.json");
    let o = run(&["render", "--preset", "fig8", "-o", svg.to_str().unwrap(), "--scene-json", json.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(s.matches("<circle").count(), 2 + 5 + 17 + 65);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["layers"][1]["name"], "points");
    assert_eq!(run(&["render", "--preset", "fig2"]).status.code(), Some(2));
}

#[test]
fn thread_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_kochawave"))
        .env("KOCHAWAVE_THREADS", "1")
        .args(["generate", "--n", "2", "--format", "csv"])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(csv_rows(&stdout(&o)).len(), 17);
}
