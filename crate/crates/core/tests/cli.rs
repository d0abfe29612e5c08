use std::process::Command;

use gwa_bv::report::RunReport;

fn gwabv(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gwabv")).args(args).env_remove("GWABV_SEED").output().expect("binary runs")
}

#[test]
fn duality_json_written_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = gwabv(&["verify-duality", "--preset", "podles", "--u", "0", "--v", "1", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["spec", "mode", "suites", "bv_table"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    let report: RunReport = serde_json::from_value(value.clone()).unwrap();
    assert_eq!(report.to_json(), value);
    let details = &report.suites["duality"].details;
    let squares = ["g1·d1", "g2·d2", "f0·∂^-3", "f1·∂^-2", "f2·∂^-1", "d3·f2"];
    for s in squares {
        assert!(details.iter().any(|c| c.name.starts_with(s) && c.passed), "{s}");
    }
}

#[test]
fn bv_table_text_for_p_not_z() {
    let out = gwabv(&["bv-table", "--p", "z^2-1", "--e", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Δ(v) = s"), "{text}");
    assert!(text.contains("all products of positive-degree classes vanish"));
    assert!(text.contains("Gerstenhaber bracket: identically zero"));
}

#[test]
fn usage_errors_have_their_own_code() {
    let out = gwabv(&["bv-table", "--p", "z^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not skew Calabi-Yau"));
    assert_eq!(gwabv(&["cohomology", "--preset", "wpl"]).status.code(), Some(2));
    assert_eq!(gwabv(&["cohomology", "--p", "z", "--nmax", "4"]).status.code(), Some(2));
    assert_eq!(gwabv(&["cohomology", "--p", "z", "--wmax", "0"]).status.code(), Some(2));
    assert_eq!(gwabv(&["verify-resolution", "--p", "z", "--e", "0"]).status.code(), Some(2));
    assert_eq!(gwabv(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failing_checks_exit_one() {
    let out = gwabv(&["bv-table", "--p", "z", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("failed: all brackets vanish"));
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["cohomology", "--preset", "podles", "--u", "1", "--v", "1", "--wmax", "1", "--json", "-"];
    let a = gwabv(&args);
    let b = gwabv(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = Command::new(env!("CARGO_BIN_EXE_gwabv")).args(args).env("GWABV_SEED", "5").output().unwrap();
    let q = |o: &[u8]| serde_json::from_slice::<serde_json::Value>(o).unwrap()["spec"]["q0"].clone();
    assert_ne!(q(&a.stdout), q(&other.stdout));
}
