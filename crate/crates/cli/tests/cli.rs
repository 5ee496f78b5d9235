use std::process::{Command, Output};

use serde_json::Value;

fn kndeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kndeg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    let o = kndeg(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json")
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["table", "--case", "two", "--window", "0"][..],
        &["verify", "--suite", "bogus"],
        &["degenerate", "--kind", "nodal"],
        &["degenerate", "--kind", "cuspidal", "--subcase", "1"],
        &["degenerate", "--kind", "nodal", "--subcase", "6"],
        &["degenerate", "--kind", "nodal", "--subcase", "1", "--params", "e=0"],
        &["table", "--case", "two", "--params", "a=1"],
        &["table", "--case", "two", "--params", "e1=x"],
        &["bracket", "--case", "two", "--n", "1"],
    ] {
        assert_eq!(kndeg(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_passes() {
    let o = kndeg(&["verify", "--suite", "all", "--window", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["suites"].as_array().unwrap().len(), 7);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--suite", "prop4", "--window", "3"][..],
        &["table", "--case", "three-s", "--window", "3"],
        &["degenerate", "--kind", "nodal", "--subcase", "5", "--window", "2"],
    ] {
        assert_eq!(kndeg(args).stdout, kndeg(args).stdout, "{args:?}");
    }
}

#[test]
fn table_entries() {
    let v = json(&["table", "--case", "two", "--window", "2"]);
    assert_eq!(v["case"], "two");
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 25);
    let e02 = entries.iter().find(|e| e["n"] == 0 && e["m"] == 2).unwrap();
    assert_eq!(e02["terms"], serde_json::json!([{"index": 3, "coeff": "2"}]));
}

#[test]
fn bracket_matches_printed() {
    let v = json(&["bracket", "--case", "two", "--n", "1", "--m", "0"]);
    assert_eq!(v["match"], true);
    let v = json(&["bracket", "--case", "three-s", "--n", "-3", "--m", "2", "--params", "e1=2,e2=-1,a=1/2"]);
    assert_eq!(v["match"], true);
}

#[test]
fn divisor_examples() {
    let v = json(&["divisor", "--case", "two", "--n", "2"]);
    assert_eq!(v["text"], "-2*[inf] + 2*[E1]");
    assert_eq!(v["degree_zero"], true);
    assert_eq!(v["match"], true);
    let v = json(&["divisor", "--case", "three-s", "--n", "-5"]);
    assert_eq!(v["degree"], 0);
    assert_eq!(v["match"], true);
}

#[test]
fn pullback_examples() {
    let v = json(&["pullback", "--kind", "cuspidal", "--n", "0"]);
    assert_eq!(v["engine"], "(t^2)*(dt)^-1");
    let v = json(&["pullback", "--kind", "nodal", "--subcase", "2", "--n", "0", "--lambda", "1"]);
    assert_eq!(v["engine"], "((1)/((t^2 - 3*e)))*(dt)^1");
    assert_eq!(v["poles"][0]["order"], 1);
    let v = json(&["pullback", "--kind", "nodal", "--subcase", "5", "--n", "2"]);
    assert_eq!(v["match"], true);
}

#[test]
fn marking_fates() {
    for (kind, sub, case, before, after) in [
        ("cuspidal", None, "two", 2, 2),
        ("cuspidal", None, "three-s", 3, 2),
        ("nodal", Some("1"), "two", 2, 3),
        ("nodal", Some("2"), "two", 2, 2),
        ("nodal", Some("4"), "three-s", 3, 3),
    ] {
        let mut args = vec!["degenerate", "--kind", kind, "--case", case, "--window", "1"];
        if let Some(s) = sub {
            args.extend(["--subcase", s]);
        }
        let v = json(&args);
        assert_eq!(v["marking_fate"]["before"], before, "{args:?}");
        assert_eq!(v["marking_fate"]["after"], after, "{args:?}");
        assert_eq!(v["findings"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn formats_and_out_file() {
    let o = kndeg(&["--format", "csv", "table", "--case", "two", "--window", "1"]);
    let csv = stdout(&o);
    assert!(csv.starts_with("n,m,index,coeff\n"));
    assert!(csv.contains("-1,-1,,\n"));
    let o = kndeg(&["--format", "text", "verify", "--suite", "jacobi", "--window", "2"]);
    assert!(stdout(&o).trim_end().ends_with("pass"));

    let path = std::env::temp_dir().join(format!("kndeg-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = kndeg(&["--out", p, "divisor", "--case", "two", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["n"], 3);
    std::fs::remove_file(&path).ok();
}
