use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn standard(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let mut all = vec!["standard"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert_eq!(code(&o), 0);
    write(dir, name, &stdout(&o))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_w3() {
    let d = TempDir::new().unwrap();
    let f = write(
        &d,
        "w3.json",
        r#"{"orders":[3,3],"gram":[["0","1/3"],["2/3","0"]],"sign_convention":"sec3"}"#,
    );
    let o = run(&["classify", s(&f)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("W_{3}^{1}\n"));
}

#[test]
fn classify_scrambled_sum() {
    let d = TempDir::new().unwrap();
    let f = standard(
        &d,
        "m.json",
        &["-k", "3", "--plus", "9", "--scramble", "11"],
    );
    let o = run(&["--json", "classify", s(&f)]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["data"]["normal_form"], "W_{3}^{1} ⊕ W_{9}^{1}");
    assert_eq!(v["data"]["cardinality"], 729);
}

#[test]
fn bad_fraction_is_parse_error() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "bad.json", r#"{"orders":[3],"gram":[["1/0"]]}"#);
    let o = run(&["classify", s(&f)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("1/0"));
}

#[test]
fn unknown_sign_convention_rejected() {
    let d = TempDir::new().unwrap();
    let f = write(
        &d,
        "tag.json",
        r#"{"orders":[3,3],"gram":[["0","1/3"],["2/3","0"]],"sign_convention":"other"}"#,
    );
    assert_eq!(code(&run(&["classify", s(&f)])), 2);
}

#[test]
fn singular_form_names_radical() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "s.json", r#"{"orders":[3],"gram":[["0"]]}"#);
    let o = run(&["classify", s(&f)]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("radical"));
}

#[test]
fn rank_examples() {
    let d = TempDir::new().unwrap();
    let w = standard(&d, "w.json", &["-k", "3", "-g", "2"]);
    let v = json(&run(&["--json", "rank", s(&w), "-k", "3"]));
    assert_eq!(v["data"]["rank"], 2);
    assert_eq!(v["data"]["certified"], true);

    let m = standard(&d, "m.json", &["-k", "3", "--plus", "9"]);
    let o = run(&["--json", "rank", s(&m), "-k", "3", "--require-certified"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["data"]["rank"], 1);
}

#[test]
fn uncertified_rank_exit_code() {
    let d = TempDir::new().unwrap();
    let w = standard(&d, "w.json", &["-k", "3", "-g", "3"]);
    let o = run(&[
        "--json",
        "rank",
        s(&w),
        "-k",
        "3",
        "--budget",
        "1",
        "--require-certified",
    ]);
    let v = json(&o);
    if v["data"]["certified"] == true {
        assert_eq!(code(&o), 0);
    } else {
        assert_eq!(code(&o), 4);
    }
}

#[test]
fn complex_w3_squared() {
    let d = TempDir::new().unwrap();
    let w = standard(&d, "w.json", &["-k", "3", "-g", "2"]);
    let dot = d.path().join("l.dot");
    let o = run(&[
        "--json",
        "complex",
        s(&w),
        "-k",
        "3",
        "--verify-links",
        "3",
        "--export-dot",
        s(&dot),
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["data"]["vertices"], 2160);
    assert_eq!(v["data"]["components"], 45);
    assert_eq!(v["data"]["link_checks"]["passed"], 3);
    assert!(std::fs::read_to_string(dot).unwrap().starts_with("graph"));
}

#[test]
fn lazy_complex_refuses_export() {
    let d = TempDir::new().unwrap();
    let w = standard(&d, "w.json", &["-k", "3", "-g", "2"]);
    let o = run(&["complex", s(&w), "-k", "3", "--max-vertices", "100"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("lazily"));
    let o = run(&[
        "complex",
        s(&w),
        "-k",
        "3",
        "--max-vertices",
        "100",
        "--homology-max-dim",
        "1",
    ]);
    assert_eq!(code(&o), 5);
}

#[test]
fn bordism_groups() {
    let o = run(&["bordism", "--degree", "0", "-k", "5"]);
    assert_eq!(stdout(&o).trim(), "Z/5");
    let o = run(&["bordism", "--degree", "1", "-k", "4", "-l", "6"]);
    assert_eq!(stdout(&o).trim(), "Z/2");
    assert_eq!(code(&run(&["bordism", "--degree", "2", "-k", "3"])), 6);
    assert_eq!(code(&run(&["bordism", "--degree", "0", "-k", "1"])), 2);
}

#[test]
fn bordism_manifold() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "n.json", r#"{"k":3,"plus":1,"minus":0}"#);
    let v = json(&run(&["--json", "bordism", "--manifold", s(&f)]));
    assert_eq!(v["data"]["class"], 1);
    assert_eq!(v["data"]["generator"], true);
    assert_eq!(v["data"]["swapping_involution"], false);
    let f = write(&d, "p.json", r#"{"k":3,"plus":2,"minus":2}"#);
    let v = json(&run(&["--json", "bordism", "--manifold", s(&f)]));
    assert_eq!(v["data"]["class"], 0);
    assert_eq!(v["data"]["swapping_involution"], true);
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "split-injectivity"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS"));
    assert_eq!(code(&run(&["verify", "no-such-suite"])), 2);
}
