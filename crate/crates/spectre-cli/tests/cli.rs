//! End-to-end tests of the `spectre` binary: exit codes, determinism, and
//! the documented outputs of the sample invocations.

use std::io::Write;
use std::process::{Command, Output};

fn spectre(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectre"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("spectre-cli-test-{name}"));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn malformed_json_exits_2_with_position() {
    let path = write_temp("bad.json", "{\"kind\": \"algebra\",\n  broken");
    let out = spectre(&["algebra", "info", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "position missing in: {err}");
}

#[test]
fn unknown_field_exits_2() {
    let path = write_temp(
        "unknown.json",
        r#"{"kind": "algebra", "summands": [{"ring": "R", "k": 1, "extra": 5}]}"#,
    );
    let out = spectre(&["algebra", "info", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema violation"));
}

#[test]
fn unknown_kind_exits_2() {
    let path = write_temp("kind.json", r#"{"kind": "mystery"}"#);
    let out = spectre(&["bimodule", "check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn negative_multiplicity_exits_2() {
    let path = write_temp(
        "neg.json",
        r#"{"kind": "bimodule", "algebra": {"summands": [{"ring": "R", "k": 1}]}, "matrix": [[-1]]}"#,
    );
    let out = spectre(&["bimodule", "check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_matrix_is_quasi_orientable_without_duality() {
    let path = write_temp(
        "zero.json",
        r#"{"kind": "pair", "algebra": {"summands": [{"ring": "R", "k": 1}]}, "even": [[0]], "odd": [[0]]}"#,
    );
    let out = spectre(&["bimodule", "check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("quasi-orientable: true"));
    assert!(text.contains("Poincare duality: false"));
}

fn m2c_file() -> std::path::PathBuf {
    write_temp(
        "m2c.json",
        r#"{"kind": "bimodule", "algebra": {"summands": [{"ring": "C", "k": 2}]}, "matrix": [[2, 1], [1, 0]]}"#,
    )
}

#[test]
fn canonical_real_structure_passes_and_random_dirac_verifies() {
    let path = m2c_file();
    let p = path.to_str().unwrap();
    let out = spectre(&["real", "admissible", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[1, 3, 5, 7]"));
    for ko in ["1", "3", "5", "7"] {
        let out = spectre(&["real", "canonical", "--ko", ko, p]);
        assert_eq!(out.status.code(), Some(0), "ko {ko}: {}", stdout(&out));
        assert!(stdout(&out).contains("status: PASS"));
    }
    let out = spectre(&["dirac", "random", "--ko", "1", "--seed", "5", p]);
    assert_eq!(out.status.code(), Some(0));
    // An impossible tolerance turns the same verification into a failure.
    let out = spectre(&["dirac", "random", "--ko", "1", "--seed", "5", "--tolerance", "1e-30", p]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dirac_dims_reports_each_admissible_ko() {
    let path = m2c_file();
    let out = spectre(&["dirac", "dims", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for ko in [1, 3, 5, 7] {
        assert!(text.contains(&format!("KO {ko}:")), "missing ko {ko}: {text}");
    }
}

#[test]
fn brute_force_cap_is_honoured() {
    let path = m2c_file();
    let out = Command::new(env!("CARGO_BIN_EXE_spectre"))
        .args(["dirac", "constrained", "--ko", "1", path.to_str().unwrap()])
        .env("SPECTRE_MAX_BRUTE_DIM", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SPECTRE_MAX_BRUTE_DIM"));
}

#[test]
fn constrained_matches_structural_when_unconstrained() {
    // M_2(C) has central projection = identity, so the constraint is vacuous
    // and both brute-force numbers must equal the structural dimension 36.
    let path = m2c_file();
    let out = spectre(&["--json", "dirac", "constrained", "--ko", "1", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dirac_dim"], 36);
    assert_eq!(v["constrained_dirac_dim"], 36);
}

#[test]
fn classify_two_real_forms() {
    let path = write_temp(
        "rr.json",
        r#"{"kind": "algebra", "summands": [{"ring": "R", "k": 2}, {"ring": "H", "k": 1}]}"#,
    );
    let out = spectre(&["--json", "cc", "classify", "--algebra", path.to_str().unwrap(), "--ko", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["triplets"].as_array().unwrap().len(), 1);
    assert_eq!(v["triplets"][0]["kind"], "B");
    assert_eq!(v["triplets"][0]["separating"], true);

    let out = spectre(&["cc", "gradings", "--algebra", path.to_str().unwrap(), "--ko", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("status: PASS"));
}

#[test]
fn classify_rejects_even_ko() {
    let path = write_temp(
        "r1.json",
        r#"{"kind": "algebra", "summands": [{"ring": "R", "k": 1}]}"#,
    );
    let out = spectre(&["cc", "classify", "--algebra", path.to_str().unwrap(), "--ko", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn maximize_quaternionic_four_four() {
    let out = spectre(&["--json", "cc", "maximize", "--k1", "H", "--k2", "H", "--r1", "4", "--r2", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rep = &v["reports"][0];
    assert_eq!(rep["r_max"], serde_json::json!([4]));
    assert_eq!(rep["table"], serde_json::json!([4]));
    assert_eq!(rep["agrees_with_table"], true);
}

#[test]
fn maximize_all_domains_emits_four_reports() {
    let out = spectre(&[
        "--json", "cc", "maximize", "--k1", "H", "--k2", "C", "--r1", "2", "--r2", "2",
        "--all-domains", "--r1p", "2", "--r2p", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["reports"].as_array().unwrap().len(), 4);
}

#[test]
fn sm_reproduce_three_generations() {
    let out = spectre(&["--json", "sm", "reproduce", "--generations", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(
        v["intersection_form_f"]["computed"],
        serde_json::json!([[0, -6, -6], [6, 0, 6], [6, -6, 0]])
    );
    assert_eq!(v["quasi_orientability_witness_f"]["computed"], serde_json::json!([1, 1]));
    assert_eq!(v["dirac_dim_f"]["computed"], 282);
    assert_eq!(v["constrained_dirac_dim_f"]["computed"], 84);
}

#[test]
fn identical_inputs_and_seed_give_byte_identical_json() {
    let path = m2c_file();
    let p = path.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["--json", "sm", "reproduce", "--generations", "1", "--seed", "9"],
        vec!["--json", "dirac", "random", "--ko", "1", "--seed", "11", p],
        vec!["--json", "bimodule", "check", p],
        vec!["--json", "cc", "maximize", "--k1", "R", "--k2", "R", "--r1", "2", "--r2", "2"],
    ];
    for args in runs {
        let a = spectre(&args);
        let b = spectre(&args);
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
}

#[test]
fn json_reports_round_trip() {
    let path = m2c_file();
    let out = spectre(&["--json", "bimodule", "check", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    // Integer fields stay integers.
    assert!(v["total_dimension"].is_u64());
    assert!(v["per_ko"]["1"]["dirac_dim"].is_u64());
}
