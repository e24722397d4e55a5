use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lcd-agc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lcd-agc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const GF16: &str = "2^4:x^4+x+1";
const E16: &str = "elliptic-as:b=0,c=8";

#[test]
fn construct_thm4_pair() {
    let o = run(&["construct", "--field", GF16, "--curve", E16, "--recipe", "thm4", "--param", "alpha0=2", "--param", "r=4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["code"]["params"]["n"], 22);
    assert_eq!(v["code"]["params"]["k"], 8);
    assert_eq!(v["code"]["params"]["lcd"], true);
    assert_eq!(v["dual"]["params"]["k"], 14);
    assert_eq!(v["dual"]["h"], "18*O - 4*(2,0)");
    assert!(v["hypotheses"].as_array().unwrap().iter().all(|h| h["passed"] == true));
}

#[test]
fn hypothesis_failure_exits_2() {
    let o = run(&["construct", "--field", GF16, "--curve", E16, "--recipe", "thm4", "--param", "alpha0=2", "--param", "r=5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("P∉E[r]"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_1() {
    let o = run(&["construct", "--field", "2^4:x^4+x^2+1", "--curve", E16, "--recipe", "thm4"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["construct", "--field", GF16, "--curve", E16, "--recipe", "thm99"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown recipe"));
    let o = run(&["construct", "--field", GF16, "--curve", E16, "--recipe", "thm4", "--param", "r=4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("alpha0"));
    assert_eq!(run(&["construct", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn mindist_small_code() {
    let path = temp("genus1.json");
    let o = run(&[
        "construct",
        "--field",
        "2^2:x^2+x+1",
        "--curve",
        "elliptic-as:b=0,c=0",
        "--recipe",
        "thm7",
        "--param",
        "G=2*O + 1*(0,0)",
        "--param",
        "h=0,1,0,0,1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["mindist", path.to_str().unwrap(), "--method", "enumerate"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("code: d = 4 exact=true method=enumerate"), "{}", stdout(&o));
}

#[test]
fn mindist_column_search_witness() {
    let path = temp("thm6.json");
    let o = run(&[
        "construct", "--field", GF16, "--curve", E16, "--recipe", "thm6", "--param", "alpha0=2", "--param", "r=0", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["mindist", path.to_str().unwrap(), "--method", "column-search"]);
    let out = stdout(&o);
    assert!(out.contains("dual: d = 4 exact=true method=column-search"), "{out}");
    let cols = out.lines().find(|l| l.starts_with("dual: dependent columns")).unwrap();
    assert_eq!(cols.matches(',').count(), 3);
}

#[test]
fn mindist_tiny_budget_brackets() {
    let path = temp("q8.json");
    let o = run(&[
        "construct",
        "--field",
        "2^6:x^6+x+1",
        "--curve",
        "hyperelliptic-as:q=8",
        "--recipe",
        "hyper-reduced",
        "--param",
        "alphas=0",
        "--param",
        "ns=4",
        "--param",
        "rs=5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    // a single code object, not the whole report
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::write(&path, v["code"].to_string()).unwrap();
    let o = bin().args(["mindist", path.to_str().unwrap(), "--budget", "10"]).env("LCD_AGC_THREADS", "1").output().unwrap();
    assert!(o.status.success());
    let out = stdout(&o);
    // design bound 93 from below, a found codeword from above
    assert!(out.contains("method=bracket") && out.contains("code: d") && !out.contains("dual"), "{out}");
    assert!(out.contains("d = 93 exact=true") || out.contains("d in [93, "), "{out}");
}

#[test]
fn reproduce_is_deterministic() {
    let a = run(&["reproduce", "2"]);
    assert!(a.status.success(), "{}", stdout(&a));
    let out = stdout(&a);
    assert!(out.contains("[23,7,16] LCD / [23,16,7] LCD PASS"), "{out}");
    assert!(out.ends_with("1/1 passed\n"));
    let b = run(&["reproduce", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tampered_manifest_fails_with_diff() {
    let o = run(&["reproduce", "--dump-manifest"]);
    let mut m: Value = serde_json::from_str(&stdout(&o)).unwrap();
    m[1]["code"]["k"] = 8.into();
    let path = temp("tampered.json");
    std::fs::write(&path, serde_json::to_string(&m).unwrap()).unwrap();
    let o = run(&["reproduce", "2", "--manifest", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("code.k: expected 8, got 7"), "{}", stdout(&o));
}

#[test]
fn rr_space() {
    let o = run(&["rr", "--field", "2^2:x^2+x+1", "--curve", "elliptic-as:b=0,c=0", "--divisor", "2*O + 1*(0,0)"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("l(G) = 3, i(G) = 0"), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("  ")).count(), 3);
}
