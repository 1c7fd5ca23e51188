//! End-to-end tests of the binary: golden stdout lines, JSON schema
//! stability, and the exit-code contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_composita"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn fixtures_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn solve_quartic_root_prints_golden_series() {
    let output = run(&[
        "solve",
        "--catalog",
        "quadratic:16",
        "--exponent",
        "2",
        "--order",
        "7",
    ]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output).trim(),
        "1, 4, -48, 960, -23296, 616448, -16830464"
    );
}

#[test]
fn solve_scaled_catalan_prints_golden_series() {
    let output = run(&["solve", "--catalog", "catalan", "--scaled", "--order", "7"]);
    assert!(output.status.success());
    assert_eq!(stdout(&output).trim(), "1, 2, 12, 96, 880, 8720, 90752");
}

#[test]
fn composita_of_identity_prints_unit_triangle() {
    let output = run(&["composita", "--inline", "1", "--order", "3"]);
    assert!(output.status.success());
    assert_eq!(stdout(&output), "1\n0 1\n0 0 1\n");
}

#[test]
fn solve_json_schema_is_stable() {
    let output = run(&[
        "solve",
        "--inline",
        "1,1",
        "--order",
        "4",
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let golden = r#"{
  "order": 4,
  "coeffs": {
    "1": "1",
    "2": "1/2",
    "3": "-1/4",
    "4": "1/4"
  }
}"#;
    assert_eq!(stdout(&output).trim(), golden);

    // --triangle switches to the two-part document
    let output = run(&[
        "solve", "--inline", "1,1", "--order", "2", "--triangle", "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert!(value.get("series").is_some());
    assert!(value.get("composita").is_some());
    assert_eq!(value["composita"]["rows"][1][0], "1/2");
}

#[test]
fn composita_json_round_trips_rows() {
    let output = run(&[
        "composita",
        "--inline",
        "1,1",
        "--order",
        "4",
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["order"], 4);
    assert_eq!(value["rows"][2][1], "2"); // T(3,2) of x + x^2
    assert_eq!(value["rows"][3][2], "3"); // T(4,3)
}

#[test]
fn corpus_command_passes_on_bundled_fixtures() {
    let root = fixtures_root();
    let output = run(&[
        "corpus",
        "--cases",
        root.join("corpus.json").to_str().unwrap(),
        "--fixtures",
        root.join("series").to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stdout(&output));
    let text = stdout(&output);
    assert!(text.lines().count() >= 17);
    assert!(text.lines().all(|line| line.ends_with("PASS")));

    let output = run(&[
        "corpus",
        "--cases",
        root.join("corpus.json").to_str().unwrap(),
        "--fixtures",
        root.join("series").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert!(value.as_array().unwrap().iter().all(|v| v["status"] == "pass"));
}

#[test]
fn corpus_command_fails_on_missing_fixture_dir() {
    let root = fixtures_root();
    let dir = tempfile::tempdir().unwrap();
    let output = run(&[
        "corpus",
        "--cases",
        root.join("corpus.json").to_str().unwrap(),
        "--fixtures",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("ERROR"));
}

#[test]
fn verify_distinguishes_pass_and_fail() {
    let dir = tempfile::tempdir().unwrap();
    let candidate = dir.path().join("half.json");
    let solve = run(&[
        "solve", "--inline", "1,1", "--order", "4", "--format", "json",
    ]);
    std::fs::write(&candidate, stdout(&solve)).unwrap();

    let pass = run(&[
        "verify",
        "--candidate",
        candidate.to_str().unwrap(),
        "--inline",
        "1,1",
        "--iterations",
        "2",
    ]);
    assert!(pass.status.success(), "{}", stdout(&pass));

    let fail = run(&[
        "verify",
        "--candidate",
        candidate.to_str().unwrap(),
        "--inline",
        "1,2",
        "--iterations",
        "2",
    ]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("MISMATCH"));
}

#[test]
fn exit_codes_distinguish_error_classes() {
    // unknown catalog name: input error
    let output = run(&["solve", "--catalog", "tan", "--order", "4"]);
    assert_eq!(output.status.code(), Some(2));

    // f(1) = 2 has no rational square root: mathematical obstruction
    let output = run(&["solve", "--inline", "2,1"]);
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("not a square"), "{stderr}");

    // offline fetch with an empty cache: network/cache error
    let dir = tempfile::tempdir().unwrap();
    let output = run(&[
        "fetch",
        "--id",
        "A141119",
        "--offline",
        "--cache-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(5));

    // malformed id is rejected before any network or cache access
    let output = run(&["fetch", "--id", "X123", "--offline"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn fetch_serves_from_warm_cache_offline() {
    let dir = tempfile::tempdir().unwrap();
    let cached = serde_json::json!({
        "id": "A141119",
        "first_index": 1,
        "terms": ["1", "4", "-48"],
        "fetched_at": 0,
        "source": "test-seed",
    });
    std::fs::write(
        dir.path().join("A141119.json"),
        serde_json::to_string(&cached).unwrap(),
    )
    .unwrap();
    let output = bin()
        .args(["fetch", "--id", "A141119", "--offline"])
        .env("COMPOSITA_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(stdout(&output).trim(), "1, 4, -48");
}

#[test]
fn series_file_input_resolves_relative_to_given_path() {
    let path: &Path = &fixtures_root().join("series/A213422.json");
    let output = run(&[
        "solve",
        "--series",
        path.to_str().unwrap(),
        "--order",
        "7",
    ]);
    assert!(output.status.success());
    assert_eq!(stdout(&output).trim(), "1, 2, 12, 96, 880, 8720, 90752");
}
