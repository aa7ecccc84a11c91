//! The CLI contract: stable exit codes, text/JSON parity, descriptor
//! round-trips and error paths.

use acx_cli::descriptor::DescriptorFile;
use acx_cli::report::{OutputReport, QueryResult};
use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

struct CliRun {
    code: i32,
    stdout: String,
    stderr: String,
}

fn acx(args: &[&str]) -> CliRun {
    acx_with_env(args, &[])
}

fn acx_with_env(args: &[&str], env: &[(&str, &str)]) -> CliRun {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_acx"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    CliRun {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

#[test]
fn guarantee_exit_codes() {
    assert_eq!(acx(&["guarantee", "--dim", "10", "--l", "49"]).code, 0);
    assert_eq!(acx(&["guarantee", "--dim", "12", "--l", "2"]).code, 1);
    let run = acx(&["guarantee", "--dim", "7", "--l", "1"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("error"));
    // Missing required argument is also a usage error (clap exits 2).
    assert_eq!(acx(&["guarantee", "--dim", "10"]).code, 2);
}

#[test]
fn product_exit_codes() {
    assert_eq!(
        acx(&["product", "--p", "1", "--q", "3", "--spin-c", "true"]).code,
        0
    );
    assert_eq!(
        acx(&["product", "--p", "1", "--q", "3", "--spin-c", "false"]).code,
        1
    );
    // Spin^c unknown for a 6-dimensional factor: undetermined.
    assert_eq!(acx(&["product", "--p", "1", "--q", "3"]).code, 3);
    assert_eq!(acx(&["product", "--p", "3", "--q", "3"]).code, 3);
    assert_eq!(acx(&["product", "--p", "2", "--q", "2"]).code, 1);
    assert_eq!(
        acx(&["product", "--spheres", "--p", "3", "--q", "3"]).code,
        0
    );
    assert_eq!(
        acx(&["product", "--spheres", "--p", "2", "--q", "2"]).code,
        1
    );
    assert_eq!(
        acx(&["product", "--odd-spheres", "--p", "3", "--q", "5"]).code,
        0
    );
    // A mixed-parity sphere product is odd-dimensional: usage error.
    assert_eq!(
        acx(&["product", "--odd-spheres", "--p", "2", "--q", "3"]).code,
        2
    );
    assert_eq!(acx(&["product", "--p", "0", "--q", "1"]).code, 2);
}

#[test]
fn genus_table_and_cap() {
    let run = acx(&["genus", "--l", "--max-degree", "8"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("K1 (degree 4) = p1/3"));
    assert!(run.stdout.contains("K2 (degree 8) = (-p1^2 + 7*p2)/45"));
    let run = acx(&["genus", "--ahat", "--max-degree", "4"]);
    assert!(run.stdout.contains("-p1/24"));
    // Degenerate request: empty table, success.
    assert_eq!(acx(&["genus", "--l", "--max-degree", "0"]).code, 0);
    // Above the cap: usage error.
    assert_eq!(acx(&["genus", "--l", "--max-degree", "28"]).code, 2);
    // Exactly one of --ahat/--l is required.
    assert_eq!(acx(&["genus", "--max-degree", "8"]).code, 2);
    assert_eq!(acx(&["genus", "--ahat", "--l"]).code, 2);
}

#[test]
fn index_flags_non_integrality() {
    let rhs = fixture("rhs_products.json");
    let rhs = rhs.to_str().unwrap();
    let run = acx(&["index", "--file", rhs, "--manifold", "S2xQ6_ab4"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("index = 1"));
    let run = acx(&["index", "--file", rhs, "--manifold", "Q6xQ4_b0"]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("index = 1/6"));
    assert!(run.stdout.contains("no (obstruction)"));
    // Missing Chern data is an input error.
    let hopf = fixture("hopf_sums.json");
    let run = acx(&[
        "index",
        "--file",
        hopf.to_str().unwrap(),
        "--manifold",
        "missing",
    ]);
    assert_eq!(run.code, 2);
}

#[test]
fn malformed_and_invalid_files_exit_2() {
    let dir = std::env::temp_dir().join("acx-cli-contract");
    std::fs::create_dir_all(&dir).unwrap();

    let bad_json = dir.join("bad.json");
    std::fs::write(&bad_json, "{ not json").unwrap();
    let run = acx(&[
        "classify",
        "--file",
        bad_json.to_str().unwrap(),
        "--list",
        "l2",
    ]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("not a valid descriptor"));

    // Unknown fields are a schema error.
    let unknown_field = dir.join("unknown.json");
    std::fs::write(
        &unknown_field,
        r#"{"version": 1, "manifolds": [], "surprise": true}"#,
    )
    .unwrap();
    assert_eq!(
        acx(&[
            "classify",
            "--file",
            unknown_field.to_str().unwrap(),
            "--list",
            "l2"
        ])
        .code,
        2
    );

    // Wrong version is rejected.
    let wrong_version = dir.join("version.json");
    std::fs::write(&wrong_version, r#"{"version": 99, "manifolds": []}"#).unwrap();
    let run = acx(&[
        "classify",
        "--file",
        wrong_version.to_str().unwrap(),
        "--list",
        "l2",
    ]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("version"));

    // Unknown list name.
    let hopf = fixture("hopf_sums.json");
    assert_eq!(
        acx(&[
            "classify",
            "--file",
            hopf.to_str().unwrap(),
            "--list",
            "nope"
        ])
        .code,
        2
    );

    // Nonexistent file.
    assert_eq!(
        acx(&["classify", "--file", "/does/not/exist.json", "--list", "x"]).code,
        2
    );
}

#[test]
fn fixture_dir_env_override() {
    let dir = fixture("hopf_sums.json");
    let dir = dir.parent().unwrap().to_str().unwrap();
    let run = acx_with_env(
        &["classify", "--file", "hopf_sums.json", "--list", "l2"],
        &[("ACX_FIXTURE_DIR", dir)],
    );
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("NOT_EXISTS"));
}

#[test]
fn descriptor_files_round_trip() {
    for name in [
        "hopf_sums.json",
        "yang_s5xs5.json",
        "cp2_sums.json",
        "rhs_products.json",
    ] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let parsed: DescriptorFile = serde_json::from_str(&text).unwrap();
        let serialized = serde_json::to_string_pretty(&parsed).unwrap();
        let reparsed: DescriptorFile = serde_json::from_str(&serialized).unwrap();
        assert_eq!(parsed, reparsed, "{name}");
    }
}

#[test]
fn json_reports_parse_and_match_text() {
    for args in [
        vec!["guarantee", "--dim", "10", "--l", "2"],
        vec!["product", "--p", "2", "--q", "3"],
        vec!["genus", "--l", "--max-degree", "12"],
    ] {
        let mut json_args = vec!["--format", "json"];
        json_args.extend(&args);
        let json = acx(&json_args);
        let text = acx(&args);
        assert_eq!(json.code, text.code, "{args:?}");
        let report: OutputReport = serde_json::from_str(&json.stdout).expect("report JSON");
        match &report.result {
            QueryResult::Verdict { verdict } => {
                assert!(text.stdout.contains(&verdict.status.to_string()));
                for f in &verdict.trace {
                    if let Some(w) = &f.witness {
                        assert!(text.stdout.contains(&w.to_string()));
                    }
                }
            }
            QueryResult::GenusTable { rows } => {
                for row in rows {
                    assert!(text.stdout.contains(&row.polynomial));
                }
            }
            QueryResult::Index { value, .. } => {
                assert!(text.stdout.contains(&value.to_string()));
            }
        }
    }
}
