use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boundquiver")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_e39_passes() {
    let o = run(&["verify", &fixture("e39_4.toml")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("T3.7    pass"));
    assert!(s.contains("L3.1    vacuous"));
    assert!(s.ends_with("overall: pass\n"));
}

#[test]
fn verify_writes_json() {
    let dir = std::env::temp_dir().join(format!("bq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let o = run(&["verify", &fixture("e39_5.toml"), "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["algebra"]["flags"]["gl_dim"], 2);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["algebra", "checks", "overall"]);
    assert_eq!(v["checks"][9]["id"], "T3.7");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn ext_over_a2() {
    let o = run(&["ext", &fixture("a2.toml"), "-m", "S2", "-n", "S1", "-i", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn resolution_line() {
    let o = run(&["resolve", &fixture("e39_4.toml"), "-m", "S4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 → P1 → P3 → P4 → S4 → 0\n"));
}

#[test]
fn truncated_resolution_is_unsupported() {
    let o = run(&["resolve", &fixture("cyc2.toml"), "-m", "S1", "--cap", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("length: ≥4"));
}

#[test]
fn non_nakayama_listing_is_refused() {
    let o = run(&["indecomposables", &fixture("a2_doubled.toml")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn maximality_checks() {
    let ok = run(&["check", &fixture("e39_6.toml"), "--max-orthogonal"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("maximal 1-orthogonal: true"));
    let bad = run(&["check", &fixture("a2.toml"), "--max-orthogonal"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("witness: Ext^1(I2, P1) = 1"));
}

#[test]
fn custom_category_file() {
    let dir = std::env::temp_dir().join(format!("bq-cat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cat = dir.join("cat.txt");
    std::fs::write(&cat, "# projectives only\nP1\nP2\n").unwrap();
    let o = run(&["approx", &fixture("a2.toml"), "-m", "S2", "--side", "right", "--cat", cat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 → P1 → P2 → S2 → 0\n");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_and_spec_errors() {
    assert_eq!(run(&["ext", &fixture("a2.toml"), "-m", "S2"]).status.code(), Some(2));
    assert_eq!(run(&["info", "/nonexistent.toml"]).status.code(), Some(2));
    assert_eq!(run(&["resolve", &fixture("a2.toml"), "-m", "Q7"]).status.code(), Some(2));
}

#[test]
fn seeds_give_identical_output() {
    let a = run(&["--seed", "17", "verify", &fixture("e39_4.toml"), "--json", "-"]);
    let b = run(&["verify", &fixture("e39_4.toml"), "--json", "-", "--seed", "17"]);
    assert_eq!(a.stdout, b.stdout);
}
