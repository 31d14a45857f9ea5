use std::fs;
use std::path::Path;
use std::process::Command;

fn ossolve(sub: &str, config: &str, out: &Path) -> (i32, String) {
    let cfg = out.join("config.json");
    fs::create_dir_all(out).unwrap();
    fs::write(&cfg, config).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ossolve"))
        .args([sub, "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap();
    (
        o.status.code().unwrap(),
        String::from_utf8_lossy(&o.stderr).into_owned(),
    )
}

const LINEAR: &str =
    r#"{"flow": {"r": 10, "chi": 1000}, "profile": {"kind": "linear", "b": 1}, "modes": {"first": 1, "last": 5}}"#;

#[test]
fn eigenvalues_table() {
    let dir = tempfile::tempdir().unwrap();
    let (code, err) = ossolve("eigenvalues", LINEAR, dir.path());
    assert_eq!(code, 0, "{err}");
    let text = fs::read_to_string(dir.path().join("eigenvalues.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,Re(k),Im(k),Re(omega),Im(omega),residual,branch_note"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r[0], (i + 1).to_string());
        assert!(r[5].parse::<f64>().unwrap() <= 1e-10);
    }
}

#[test]
fn empty_mode_range_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = LINEAR.replace(r#""first": 1, "last": 5"#, r#""first": 3, "last": 2"#);
    assert_eq!(ossolve("eigenvalues", &cfg, dir.path()).0, 0);
    let text = fs::read_to_string(dir.path().join("eigenvalues.csv")).unwrap();
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for (sub, cfg) in [
        ("eigenvalues", LINEAR.replace(r#""b": 1"#, r#""b": 0"#)),
        ("eigenvalues", LINEAR.replace(r#""b": 1"#, r#""b": 1, "bogus": 2"#)),
        ("eigenvalues", "not json".to_string()),
        ("figures", r#"{"which": "fig3"}"#.to_string()),
        (
            "validate",
            r#"{"n": 5, "r": [10], "chi": 1000, "points": 16}"#.to_string(),
        ),
    ] {
        let (code, err) = ossolve(sub, &cfg, dir.path());
        assert_eq!(code, 2, "{sub} {cfg}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn unresolvable_rows_exit_3_with_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"flow": {"r": 0.5, "chi": 50}, "profile": {"kind": "linear", "b": 1}, "modes": {"first": 1, "last": 8}, "regime": "long_wave"}"#;
    let (code, _) = ossolve("eigenvalues", cfg, dir.path());
    assert_eq!(code, 3);
    let text = fs::read_to_string(dir.path().join("eigenvalues.csv")).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert!(text.contains("FAILED"));
}

#[test]
fn eigenfunction_matches_figure_panel() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"method": "outer", "case": "linear", "n": 5, "epsilon": 0.2, "reynolds": 1000}"#;
    assert_eq!(ossolve("eigenfunction", cfg, dir.path()).0, 0);
    assert_eq!(ossolve("figures", r#"{"which": "fig1"}"#, dir.path()).0, 0);
    let a = fs::read_to_string(dir.path().join("phi_outer_linear_n5_R1000_eps0.2.csv")).unwrap();
    let b = fs::read_to_string(dir.path().join("fig1_linear_n5_R1000_eps0.2.csv")).unwrap();
    assert_eq!(a.lines().count(), 1001);
    assert_eq!(a, b);
}

#[test]
fn figure_summary_records_version_and_hash() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ossolve("figures", r#"{"which": "fig2"}"#, dir.path()).0, 0);
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("fig2_summary.json")).unwrap()).unwrap();
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
    assert_eq!(v["max_abs_strictly_decreasing_in_reynolds"], true);
    assert!(dir.path().join("fig2.svg").exists());
}

#[test]
fn validate_reports_rows_and_trend() {
    let dir = tempfile::tempdir().unwrap();
    let (code, err) = ossolve("validate", r#"{"n": 5, "r": [10, 20], "chi": 1000}"#, dir.path());
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("validate.json")).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert!(v["rows"][0]["relative_gap"].as_f64().unwrap() < 0.1);
    assert!(v["status"] == "pass" || v["status"] == "fail");
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn reruns_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    ossolve("eigenvalues", LINEAR, a.path());
    ossolve("eigenvalues", LINEAR, b.path());
    let read = |d: &Path| fs::read(d.join("eigenvalues.csv")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
}
