use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strange-ortho"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "ortho", "--alpha", "0,1/2", "--nmax", "4"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(json["schema"], "1");
    assert_eq!(json["pass"], true);
    assert!(String::from_utf8_lossy(&a.stderr).contains("checks passed"));
}

#[test]
fn verify_csv_header() {
    let out = run(&[
        "verify",
        "uniqueness",
        "--alpha",
        "0",
        "--kappa-grid",
        "1",
        "--nmax",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "name,inputs,expected,computed,exact,tolerance,pass"
    );
}

#[test]
fn writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = run(&["table", "energy-levels", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().next().unwrap(), "N,l,n,k,alpha,energy,energy_float");
    assert_eq!(text.lines().count(), 19);
}

#[test]
fn table_json() {
    let out = run(&["table", "h-values", "--points", "0,1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["header"][0], "x");
    assert_eq!(json["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "ortho", "--alpha", "-3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "ortho", "--alpha", "x/y"]).status.code(), Some(2));
    assert_eq!(
        run(&["table", "zeros", "--out", "/nonexistent/dir/t.csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn tight_tolerance_fails_with_exit_1() {
    let out = run(&["verify", "ortho", "--alpha", "0", "--nmax", "3", "--tol", "1e-40"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}
