use std::fs;
use std::process::{Command, Output};

fn bicanon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicanon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_all_passes() {
    let out = bicanon(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS  order/sigma2  8"));
    assert!(text.trim_end().ends_with("overall PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn filters_by_family_and_check() {
    let out = bicanon(&["verify", "--family", "2", "--check", "order"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("order/sigma2"));
    assert!(!text.contains("order/sigma1"));
    assert!(!text.contains("invariance/"));
}

#[test]
fn classify_prints_pairs_and_trace() {
    let out = bicanon(&["classify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("admissible (order, index): (4,2) (8,2) (8,4)"));
    assert!(text.contains("allowed orders: 1 2 3 4 5 6 8"));
    assert!(text.contains("(16,4)  no-order-sixteen-index-four"));
}

#[test]
fn report_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = bicanon(&["report", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert["status"], "pass");
    assert_eq!(cert["engine"], "bicanon");
}

#[test]
fn fixtures_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = bicanon(&["fixtures", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for k in 1..=3 {
        let file = dir.path().join(format!("family-{k}.json"));
        let out = bicanon(&["verify", "--input", file.to_str().unwrap(), "--check", "index"]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert!(stdout(&out).contains(&format!("PASS  input/index/sigma{k}")));
    }
}

#[test]
fn corrupted_map_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad-sigma.json");
    // sigma1 with the factor i dropped from the cover coordinate.
    fs::write(
        &path,
        r#"{"maps": [{"name": "sigma1", "family": "family-1",
            "coords": {"w": "w/(y^2*z^3)", "y": "1/y", "z": "1/z"}}]}"#,
    )
    .unwrap();
    let out = bicanon(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL  invariance/family-1/sigma1  witness:"), "{text}");
    assert!(text.contains("FAIL  input/invariance/family-1/sigma1"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        r#"{"maps": [{"name": "m", "coords": {"w": "w", "y": "y +* z", "z": "z"}}]}"#,
    )
    .unwrap();
    let out = bicanon(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parse error at byte 3"), "{err}");

    let out = bicanon(&["verify", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn support_violation_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad-family.json");
    fs::write(
        &path,
        r#"{"families": [{"name": "bad", "kind": "enriques_horikawa", "parameters": ["A"],
            "monomials": [{"i": 0, "j": 1, "coeff": {"param": "A", "scalar": "1,0,0,0"}}]}]}"#,
    )
    .unwrap();
    let out = bicanon(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("4 <= i+2j <= 8"));
}
