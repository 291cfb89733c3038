use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_clifford-dfs"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn builtins_analyze_cleanly() {
    for name in ["gamma1", "gamma1-weighted", "gamma2", "gamma3", "gamma3-unit", "cl3"] {
        let out = run(&["analyze", "--builtin", name, "--format", "json"]);
        assert_eq!(code(&out), 0, "{name}: {}", stderr(&out));
        assert_eq!(json(&out)["semisimple"], true);
    }
}

#[test]
fn dual_numbers_exit_with_math_failure_but_still_report() {
    let out = run(&["analyze", "--builtin", "dual-numbers", "--format", "json"]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    assert_eq!(v["semisimple"], false);
    assert_eq!(v["determinant"], "0");
    assert!(v["irreps"].is_null());
    assert!(stderr(&out).contains("not semisimple"), "{}", stderr(&out));
}

#[test]
fn malformed_specs_exit_one_with_location() {
    let cases = [
        ("bad-syntax.toml", "bad-syntax.toml:2:"),
        ("wrong-factors.toml", "wrong-factors.toml:2:16:"),
        ("unknown-key.toml", "unknown-key.toml:3:1:"),
        ("not-a-blade.toml", "not-a-blade.toml:2:16:"),
    ];
    for (file, location) in cases {
        let path = data(file);
        let out = run(&["analyze", path.to_str().unwrap()]);
        assert_eq!(code(&out), 1, "{file}");
        assert!(stderr(&out).contains(location), "{file}: {}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn coefficient_count_mismatch_points_at_coeffs() {
    let path = data("coeff-count.toml");
    let out = run(&["dfs", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("coeff-count.toml:3:10: 3 coefficients for a basis of size 4"));
}

#[test]
fn unknown_builtin_and_missing_file() {
    let out = run(&["analyze", "--builtin", "nope"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("gamma1"));
    let out = run(&["analyze", "/nonexistent/spec.toml"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn json_is_byte_stable() {
    for args in [
        &["analyze", "--builtin", "gamma1", "--format", "json"][..],
        &["dfs", "--builtin", "gamma3", "--format", "json"][..],
        &["verify", "--builtin", "cl3", "--theorem", "orthogonality", "--format", "json"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["dfs", "--builtin", "gamma1-weighted", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    let direct = run(&["dfs", "--builtin", "gamma1-weighted", "--format", "json"]);
    assert_eq!(written, direct.stdout);

    let bad = dir.path().join("missing").join("report.json");
    let out = run(&["analyze", "--builtin", "gamma1", "--out", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}

#[test]
fn table_and_json_agree() {
    let table = run(&["dfs", "--builtin", "gamma1-weighted"]);
    let text = String::from_utf8(table.stdout).unwrap();
    let v = json(&run(&["dfs", "--builtin", "gamma1-weighted", "--format", "json"]));
    for (j, row) in v["characters"].as_array().unwrap().iter().enumerate() {
        let cells: Vec<&str> = row.as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
        let line = text.lines().find(|l| l.trim_start().starts_with(&format!("R{}", j + 1))).unwrap();
        assert_eq!(line.split_whitespace().skip(1).collect::<Vec<_>>(), cells);
    }
    for entry in v["dfs"].as_array().unwrap() {
        let line = format!("psi{} = {}", entry["irrep"], entry["component"].as_str().unwrap());
        assert!(text.contains(&line), "{line}");
        assert!(text.contains(&format!("eigenvalue {}", entry["eigenvalue"].as_str().unwrap())));
    }
}

#[test]
fn weighted_dfs_reports_concrete_eigenvalue_and_oracle() {
    let v = json(&run(&["dfs", "--builtin", "gamma1-weighted", "--format", "json"]));
    let first = &v["dfs"][0];
    assert_eq!(first["eigenvalue"], "25/12");
    assert_eq!(first["zero"], false);
    assert!(first["oracle_residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn custom_spec_file() {
    let path = data("custom.toml");
    let v = json(&run(&["dfs", path.to_str().unwrap(), "--format", "json"]));
    let dfs = v["dfs"].as_array().unwrap();
    assert_eq!(dfs[0]["zero"], true);
    assert_eq!(dfs[1]["component"], "1 [1 g1] + 1 [g1 1]");
    assert_eq!(dfs[1]["eigenvalue"], "-1");
}

#[test]
fn verify_batteries_on_cl3() {
    for theorem in ["gram", "orthogonality", "unitarize", "tensor"] {
        let out = run(&["verify", "--builtin", "cl3", "--theorem", theorem, "--format", "json"]);
        assert_eq!(code(&out), 0, "{theorem}: {}", stderr(&out));
        assert_eq!(json(&out)["pass"], true, "{theorem}");
    }
    // Cl3 is not commutative, so there is no one-dimensional character table.
    let out = run(&["verify", "--builtin", "cl3", "--theorem", "characters"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not commutative"));
}

#[test]
fn verify_fails_on_dual_numbers() {
    for theorem in ["gram", "unitarize"] {
        let out = run(&["verify", "--builtin", "dual-numbers", "--theorem", theorem]);
        assert_eq!(code(&out), 2, "{theorem}");
    }
}

#[test]
fn rejects_bad_tolerance() {
    let out = run(&["dfs", "--builtin", "gamma1", "--tolerance=-1"]);
    assert_eq!(code(&out), 1);
}
