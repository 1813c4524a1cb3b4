use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{}.ea", name))
}

fn effectkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_effectkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn on(cmd: &str, name: &str, extra: &[&str]) -> Output {
    let path = fixture(name);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    effectkit(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_effectkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn every_fixture_passes_check() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "ea") {
            let o = effectkit(&["check", path.to_str().unwrap()]);
            assert_eq!(o.status.code(), Some(0), "{}\n{}", path.display(), stdout(&o));
            seen += 1;
        }
    }
    assert_eq!(seen, 13);
}

#[test]
fn lex1_represents_with_zero_section() {
    let o = on("represent", "LEX1", &[]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("head: (Z,1)"), "{}", out);
    assert!(out.contains("tail: Z\n"), "{}", out);
    assert!(out.contains("section: t ↦ (t,0)"), "{}", out);
}

#[test]
fn lex21_represent_reports_the_obstruction() {
    let o = on("represent", "LEX21", &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("2·c₁ = (2,1) unsolvable"));
}

#[test]
fn b4_splits_into_two_antilattice_factors() {
    let o = on("subdirect", "B4", &["--json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("\"value\": \"2\""), "{}", out);
    assert!(out.contains("factors antilattice"));
    assert!(out.contains("\"exit_code\": 0"));
}

#[test]
fn hs4_violates_rdp() {
    assert_eq!(on("rdp", "HS4", &[]).status.code(), Some(1));
    assert_eq!(on("rdp", "C4", &[]).status.code(), Some(0));
}

#[test]
fn reports_are_deterministic_for_a_seed() {
    for (cmd, name) in [("classify", "K61"), ("ideals", "LEX21"), ("rdp", "SQ"), ("decompose", "LEX21")] {
        for flags in [&["--seed", "7"][..], &["--seed", "7", "--json"][..], &["--seed", "3", "--jobs", "2"][..]] {
            let a = on(cmd, name, flags);
            let b = on(cmd, name, flags);
            assert_eq!(a.stdout, b.stdout, "{} {}", cmd, name);
            assert_eq!(a.status.code(), b.status.code());
        }
    }
}

#[test]
fn unknown_after_budget_exits_two() {
    let doc = "algebra L\n kind interval\n cone lex(product(2), product(1))\n unit (1,1,0)\n split 2 1\nend\n";
    let o = with_stdin(&["states", "-"], doc);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn bad_input_exits_three_with_a_line() {
    let doc = "algebra X\n kind table\n elements 0 a 1\n zero 0\n one 1\n a+a=\nend\n";
    let o = with_stdin(&["check", "-"], doc);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 6"));
    assert_eq!(effectkit(&["frobnicate", "x.ea"]).status.code(), Some(3));
    assert_eq!(on("subdirect", "SQ", &[]).status.code(), Some(3));
}

#[test]
fn decompose_searches_table_states() {
    let o = on("decompose", "C2", &["--head", "integer:product(1)@2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = on("decompose", "C2", &["--head", "integer:product(1)@1"]);
    assert_eq!(o.status.code(), Some(1));
}
