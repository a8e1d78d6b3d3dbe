//! End-to-end tests of the binary: subcommand grammar, JSON payloads, and
//! the exit-code contract (0 holds, 1 violation/refutation, 2 usage error).

use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn walkcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walkcert"))
        .args(args)
        .env_remove("WALKCERT_MAX_N")
        .output()
        .expect("binary runs")
}

fn payload(output: &Output) -> Value {
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert_eq!(stdout.lines().count(), 1, "payload must be one line: {stdout}");
    serde_json::from_str(stdout.trim()).expect("stdout is JSON")
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(contents.as_bytes()).unwrap();
    file
}

const LAGARIAS: &str =
    r#"{"terms":[{"coef":"1","indices":[0,3]},{"coef":"-1","indices":[1,2]}]}"#;

#[test]
fn walks_family_path() {
    let out = walkcert(&["walks", "--family", "path:3", "--max", "4"]);
    assert!(out.status.success());
    let v = payload(&out);
    assert_eq!(v["w"], serde_json::json!(["3", "4", "6", "8", "12"]));
    assert_eq!(v["n"], 3);
    assert_eq!(v["m"], 2);
}

#[test]
fn walks_accepts_graph6_and_files() {
    let out = walkcert(&["walks", "DQc", "--max", "2"]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["n"], 5);

    let file = write_temp("n 3\n0 1\n1 2\n");
    let out = walkcert(&["walks", file.path().to_str().unwrap(), "--max", "4"]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["w"][4], "12");
}

#[test]
fn certify_two_factor_params() {
    let out = walkcert(&["certify", "two-factor", "--alpha", "3,5", "--beta", "2,6"]);
    assert!(out.status.success());
    let v = payload(&out);
    assert_eq!(v["params"], serde_json::json!({"a": 1, "b": 1, "c": 1}));
    assert_eq!(v["certificate"]["verified"], true);
}

#[test]
fn certify_two_factor_refutation_exits_one() {
    let out = walkcert(&["certify", "two-factor", "--alpha", "1,2", "--beta", "0,3"]);
    assert_eq!(out.status.code(), Some(1));
    let v = payload(&out);
    assert_eq!(v["refuted"]["kind"], "odd_vertex");
    assert_eq!(v["refuted"]["vertex"], serde_json::json!([0, 3]));
}

#[test]
fn certify_square_sandwich_agm_univariate() {
    let out = walkcert(&["certify", "square", "--alpha", "1,2", "--sigma", "2,1"]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["certificate"]["verified"], true);

    let out = walkcert(&["certify", "sandwich", "--a", "1", "--b", "0", "--c", "1"]);
    assert!(out.status.success());
    let v = payload(&out);
    assert_eq!(v["inequality"]["terms"][0]["indices"], serde_json::json!([2, 4]));

    let out = walkcert(&["certify", "agm", "--alpha", "1,1,2"]);
    assert!(out.status.success());
    let v = payload(&out);
    assert!(v["certificate"]["sos"].as_array().map(|s| !s.is_empty()).unwrap_or(false));

    let out = walkcert(&[
        "certify", "univariate", "--k", "1", "--coeffs", "2", "--tol", "1e-6",
    ]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["bound"], "-1");
}

#[test]
fn certify_shift_reindexes() {
    let out = walkcert(&[
        "certify", "sandwich", "--a", "0", "--b", "0", "--c", "1", "--shift", "1",
    ]);
    assert!(out.status.success());
    let v = payload(&out);
    // w1² <= w0·w2 shifted by 1 becomes w3² <= w2·w4
    assert_eq!(v["inequality"]["terms"][0]["indices"], serde_json::json!([2, 4]));
    assert_eq!(v["inequality"]["terms"][1]["indices"], serde_json::json!([3, 3]));
}

#[test]
fn check_reports_value_and_exit_codes() {
    let ineq = write_temp(LAGARIAS);
    let path = ineq.path().to_str().unwrap();

    // boundary case: on P3 both products are 24, so the value is exactly 0
    let out = walkcert(&["check", path, "--family", "path:3"]);
    assert!(out.status.success());
    let v = payload(&out);
    assert_eq!(v["holds"], true);
    assert_eq!(v["value"], "0");

    let out = walkcert(&["check", path, "--family", "union(complete:3,star:5)"]);
    assert_eq!(out.status.code(), Some(1));
    let v = payload(&out);
    assert_eq!(v["holds"], false);
    assert_eq!(v["value"], "-6");
}

#[test]
fn search_family_scan_finds_counterexample() {
    let ineq = write_temp(LAGARIAS);
    let out = walkcert(&[
        "search",
        ineq.path().to_str().unwrap(),
        "--family",
        "union(complete:3,star:m)",
        "--range",
        "m=1..10",
        "--stop-at-first",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = payload(&out);
    assert_eq!(v["violations"][0]["param"], 5);
    assert_eq!(v["violations"][0]["value"], "-6");
    assert_eq!(v["violations"][0]["n"], 9);
}

#[test]
fn search_exhaustive_clean_run_exits_zero() {
    let ineq = write_temp(LAGARIAS);
    let out = walkcert(&[
        "search",
        ineq.path().to_str().unwrap(),
        "--exhaustive",
        "5",
        "--jobs",
        "2",
    ]);
    assert!(out.status.success());
    let v = payload(&out);
    assert_eq!(v["tested"], 1024);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn search_regular_only_filters() {
    let ineq = write_temp(LAGARIAS);
    let out = walkcert(&[
        "search",
        ineq.path().to_str().unwrap(),
        "--exhaustive",
        "4",
        "--regular-only",
    ]);
    assert!(out.status.success());
    let v = payload(&out);
    assert!(v["tested"].as_u64().unwrap() < 64);
}

#[test]
fn search_respects_enumeration_cap_and_env() {
    let ineq = write_temp(LAGARIAS);
    let path = ineq.path().to_str().unwrap();
    let out = walkcert(&["search", path, "--exhaustive", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(payload(&out)["error"].as_str().unwrap().contains("limit"));

    // raising the cap via the environment lets a small-but-capped n pass
    let out = Command::new(env!("CARGO_BIN_EXE_walkcert"))
        .args(["search", path, "--exhaustive", "4"])
        .env("WALKCERT_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "env var tightens the cap too");
}

#[test]
fn search_file_list_corpus() {
    let ineq = write_temp(LAGARIAS);
    // P3, K3, and the 9-node counterexample K3 ∪ K_{1,5}
    let graphs = write_temp("Bg\nBw\nHwCO__O\n");
    let out = walkcert(&[
        "search",
        ineq.path().to_str().unwrap(),
        "--graphs",
        graphs.path().to_str().unwrap(),
    ]);
    let v = payload(&out);
    assert_eq!(v["tested"], 3);
    let violations = v["violations"].as_array().unwrap();
    if violations.is_empty() {
        panic!("expected the 9-node counterexample to violate: {v}");
    }
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(violations[0]["value"], "-6");
}

#[test]
fn search_is_deterministic() {
    let ineq = write_temp(LAGARIAS);
    let args = [
        "search",
        ineq.path().to_str().unwrap(),
        "--family",
        "union(complete:3,star:m)",
        "--range",
        "m=1..8",
    ];
    let a = walkcert(&args);
    let b = walkcert(&args);
    let strip_elapsed = |out: &Output| {
        let mut v = payload(out);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(strip_elapsed(&a), strip_elapsed(&b));
}

#[test]
fn obstruct_finds_odd_vertex_and_degree() {
    let ineq = write_temp(LAGARIAS);
    let out = walkcert(&["obstruct", ineq.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = payload(&out);
    let kinds: Vec<&str> = v["obstructions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"odd_vertex"));
    assert!(kinds.contains(&"odd_degree"));
}

#[test]
fn obstruct_clean_candidate_exits_zero() {
    // the sandwich base (0,0,1): x2² - x1·x2 has no obstruction
    let poly = write_temp(
        r#"{"k":2,"terms":[{"exp":[0,2],"coef":"1"},{"exp":[1,1],"coef":"-1"}]}"#,
    );
    let out = walkcert(&["obstruct", poly.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(payload(&out)["obstructions"].as_array().unwrap().len(), 0);
}

#[test]
fn obstruct_sampling_diagnostic_is_seeded() {
    // x1³ + x2³ + x3³: no Newton obstruction on the symmetrization beyond
    // odd degree, but sampling finds explicit negative points
    let poly = write_temp(
        r#"{"k":3,"terms":[{"exp":[3,0,0],"coef":"1"},{"exp":[0,3,0],"coef":"1"},{"exp":[0,0,3],"coef":"1"}]}"#,
    );
    let path = poly.path().to_str().unwrap();
    let a = walkcert(&["obstruct", path, "--sample", "100", "--seed", "9"]);
    let b = walkcert(&["obstruct", path, "--sample", "100", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(payload(&a)["sample_witness"], payload(&b)["sample_witness"]);
    assert!(payload(&a)["sample_witness"]["value"].as_str().unwrap().starts_with('-'));
}

#[test]
fn spectral_reports_eigenvalues_and_residuals() {
    let out = walkcert(&["spectral", "--family", "complete:3"]);
    assert!(out.status.success());
    let v = payload(&out);
    let eigen = v["eigenvalues"].as_array().unwrap();
    assert_eq!(eigen.len(), 3);
    assert!((eigen[0].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!(v["residuals"]["sum_mu2"].as_f64().unwrap() < 1e-9);

    let poly = write_temp(r#"{"k":1,"terms":[{"exp":[2],"coef":"1"}]}"#);
    let out = walkcert(&[
        "spectral",
        "--family",
        "path:3",
        "--verify-prop31",
        poly.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(payload(&out)["prop31_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn symmetrize_round_trips_through_json() {
    let poly = write_temp(r#"{"k":2,"terms":[{"exp":[2,0],"coef":"1"},{"exp":[1,1],"coef":"-1"}]}"#);
    let out = walkcert(&["symmetrize", poly.path().to_str().unwrap()]);
    assert!(out.status.success());
    let v = payload(&out);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3); // x1² + x2² - 2x1x2
}

#[test]
fn newton_pass_and_refute() {
    let even = write_temp(
        r#"{"k":2,"terms":[{"exp":[2,0],"coef":"1"},{"exp":[0,2],"coef":"1"},{"exp":[1,1],"coef":"-2"}]}"#,
    );
    let out = walkcert(&["newton", even.path().to_str().unwrap()]);
    assert!(out.status.success());
    let v = payload(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["vertices"], serde_json::json!([[0, 2], [2, 0]]));

    let odd = write_temp(
        r#"{"k":2,"terms":[{"exp":[0,3],"coef":"1"},{"exp":[3,0],"coef":"1"},{"exp":[1,2],"coef":"-1"},{"exp":[2,1],"coef":"-1"}]}"#,
    );
    let out = walkcert(&["newton", odd.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = payload(&out);
    assert_eq!(v["refuted"]["vertex"], serde_json::json!([0, 3]));
    assert_eq!(v["refuted"]["violation"], "odd_coordinate");
}

#[test]
fn usage_errors_exit_two_with_error_object() {
    let out = walkcert(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(payload(&out)["error"].as_str().is_some());

    let bad_json = write_temp("{ not json");
    let out = walkcert(&["check", bad_json.path().to_str().unwrap(), "--family", "path:3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(payload(&out)["error"].as_str().is_some());

    let out = walkcert(&["walks", "--family", "cycle:2", "--max", "3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = walkcert(&["walks", "--max", "3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = walkcert(&["walks", "--family", "star:m", "--max", "3"]);
    assert_eq!(out.status.code(), Some(2));
}
