use std::path::Path;
use std::process::{Command, Output};

fn hyperlap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperlap")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn kernel_row_matches_closed_form() {
    let o = hyperlap(&["kernel", "--space", "hn", "--n", "3", "--t", "1", "--r", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,r,value"));
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    let exact = (-1.25f64).exp() * (4.0 * std::f64::consts::PI).powf(-1.5) / 1f64.sinh();
    assert_eq!(&row[..2], &[1.0, 1.0]);
    assert!((row[2] - exact).abs() < 1e-12 * exact, "{} {exact}", row[2]);
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let args = ["green", "--space", "hn", "--n", "5", "--lambda", "-1,0,2", "--r", "0.1:3:7", "--format", "json"];
    let a = hyperlap(&args);
    let b = hyperlap(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let rows: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 21);
}

#[test]
fn malformed_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"lemma31": {"depth": 14, "colour": 1}}"#);
    let o = hyperlap(&["verify", "lemma31", "--config", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(hyperlap(&["kernel", "--space", "hn", "--n", "3", "--t", "-1", "--r", "1"]).status.code(), Some(1));
    assert_eq!(hyperlap(&["kernel", "--space", "hn"]).status.code(), Some(1));
    assert_eq!(hyperlap(&["verify", "lemma99"]).status.code(), Some(1));
}

#[test]
fn verify_reports_pass_and_failure() {
    let o = hyperlap(&["verify", "lemma31"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["lemma"], "lemma31");
    assert_eq!(report["pass"], true);
    assert!(report["worst_margin"].as_f64().unwrap() >= 0.0);

    let dir = tempfile::tempdir().unwrap();
    let strict = write(dir.path(), "strict.json", r#"{"lemma31": {"asymptotic_tol": 1e-9}}"#);
    let o = hyperlap(&["verify", "lemma31", "--config", &strict]);
    assert_eq!(o.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["pass"], false);
}

#[test]
fn verify_writes_report_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reports");
    let o = hyperlap(&["verify", "phi", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("phi.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    let csv = std::fs::read_to_string(out.join("phi.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert!(header.starts_with("label,") && header.ends_with(",margin,pass"), "{header}");
}

#[test]
fn suite_listing() {
    let o = hyperlap(&["verify", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let names: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(names, ["lemma31", "phi", "lemma42", "lemma52", "prop43", "prop45", "prop53", "cp2b"]);
}

#[test]
fn run_config_matches_direct_invocation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.csv");
    let cfg = format!(
        r#"{{"command": "kernel", "space": "hn", "n": 3, "t": [0.5, 1], "r": {{"from": 0, "to": 2, "count": 3}},
            "output": {{"path": {:?}}}}}"#,
        out.to_str().unwrap()
    );
    let cfg = write(dir.path(), "run.json", &cfg);
    assert_eq!(hyperlap(&["run", &cfg]).status.code(), Some(0));
    let direct = hyperlap(&["kernel", "--space", "hn", "--n", "3", "--t", "0.5,1", "--r", "0:2:3"]);
    assert_eq!(std::fs::read(&out).unwrap(), direct.stdout);

    let stray = write(dir.path(), "stray.json", r#"{"command": "volume", "space": "hn", "n": 3, "r": 1, "t": 1}"#);
    assert_eq!(hyperlap(&["run", &stray]).status.code(), Some(1));
}

#[test]
fn maximal_probe_writes_summary() {
    let dir = tempfile::tempdir().unwrap();
    let o = hyperlap(&["maximal", "--n", "2", "--p", "2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("maximal_n2_p2.json")).unwrap()).unwrap();
    let max = summary["max_ratio"].as_f64().unwrap();
    assert!(max >= 1.0 && max <= summary["budget"].as_f64().unwrap());
    assert_eq!(summary["within_budget"], true);
    let csv = std::fs::read_to_string(dir.path().join("maximal_n2_p2.csv")).unwrap();
    assert!(csv.starts_with("name,ratio\n"));
}
