use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_clone-commutant"));
    cmd.env_remove("CLONE_COMMUTANT_CAP");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// A scratch directory unique to one test.
struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("clone-commutant-{}-{name}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let path = self.0.join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_str().unwrap().to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

const JOIN: &str = r#"{"arity":2,"table":[0,1,1,1]}"#;
const AND: &str = r#"{"arity":2,"table":[0,0,0,1]}"#;
const PROJ: &str = r#"{"arity":2,"table":[0,1,0,1]}"#;

#[test]
fn join_commutes_with_itself() {
    let s = Scratch::new("join");
    let join = s.file("join.json", JOIN);
    let out = run(&["kron", &join, &join, "--both"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("commute: true"), "{}", stdout(&out));
}

#[test]
fn and_join_witness() {
    let s = Scratch::new("andjoin");
    let and = s.file("and.json", AND);
    let join = s.file("join.json", JOIN);
    let out = run(&["commutes", &and, &join]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("commute: false"), "{text}");
    assert!(text.contains("[0 1]") && text.contains("[1 0]"), "{text}");
    assert!(text.contains("first product: 0, second product: 1"), "{text}");
}

#[test]
fn projection_commutes_with_everything() {
    let s = Scratch::new("proj");
    let proj = s.file("proj.json", PROJ);
    let and = s.file("and.json", AND);
    let out = run(&["commutes", &proj, &and]);
    assert!(stdout(&out).contains("commute: true"));
}

#[test]
fn builtin_commutant_counts() {
    let out = run(&["--json", "commutant", "--builtin", "mat:bool2", "--arity", "3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["arity_counts"], serde_json::json!([1, 2, 4, 8]));

    let out = run(&["--json", "commutant", "--builtin", "mat_aff:bool2", "--arity", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["arity_counts"], serde_json::json!([2, 3, 5, 9]));
}

#[test]
fn empty_generators_give_everything() {
    let s = Scratch::new("empty");
    let empty = s.file("empty.json", r#"{"carrier":2,"max_arity":3,"generators":[]}"#);
    let out = run(&["--json", "commutant", &empty]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["arity_counts"], serde_json::json!([2, 4, 16, 256]));
    assert_eq!(v["slices"], serde_json::json!(["full", "full", "full", "full"]));
}

#[test]
fn theory_documents_round_trip() {
    let s = Scratch::new("roundtrip");
    let first = run(&["--json", "commutant", "--builtin", "mat_aff:Z3", "--arity", "2"]);
    assert!(first.status.success(), "{}", stderr(&first));
    let path = s.file("c.json", &stdout(&first));
    // The commutant of the commutant of an affine clone is the clone again,
    // so reload through a second commutant and compare emitted documents.
    let twice = run(&["--json", "commutant", &path]);
    assert!(twice.status.success(), "{}", stderr(&twice));
    let again = s.file("cc.json", &stdout(&twice));
    let thrice = run(&["--json", "commutant", &again]);
    assert_eq!(stdout(&first), stdout(&thrice));
}

#[test]
fn verify_examples_pass() {
    let out = run(&["verify-examples"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = run(&["--json", "verify-examples", "--filter", "galois"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["status"], "pass");
}

#[test]
fn corrupted_builtin_is_caught() {
    let out = run(&["verify-examples", "--filter", "mat2", "--inject-corrupt", "mat:bool2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("missing") || text.contains("extra"), "{text}");
}

#[test]
fn verify_output_is_independent_of_threads() {
    let one = run(&["--json", "--threads", "1", "verify-examples"]);
    let four = run(&["--json", "--threads", "4", "verify-examples"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn parse_errors_exit_two() {
    let s = Scratch::new("parse");
    let bad = s.file("bad.json", "{\n  \"arity\": 2,\n  \"table\": [0, 1, \"x\"]\n}");
    let out = run(&["commutes", &bad, &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line 3") && err.contains("table[2]"), "{err}");

    let short = s.file("short.json", r#"{"arity":2,"table":[0,1,1]}"#);
    assert_eq!(run(&["commutes", &short, &short]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["commutant", "--builtin", "mat:nope"]).status.code(), Some(2));
}

#[test]
fn caps_exit_three() {
    let out = run(&["--cap", "3", "commutant", "--builtin", "mat:bool2", "--arity", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let out = bin()
        .args(["commutant", "--builtin", "mat:bool2", "--arity", "3"])
        .env("CLONE_COMMUTANT_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn commutativity_queries() {
    let out = run(&["is-commutative", "mat:bool2"]);
    assert!(stdout(&out).contains("commutative: true"));
    let out = run(&["is-commutative", "full:2", "--arity", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("commutative: false"));
}

#[test]
fn monad_commands() {
    let s = Scratch::new("monad");
    let xor = s.file("xor.json", r#"{"op":{"arity":2,"table":[0,1,1,0]},"anchor":[0,1],"set_size":2}"#);
    let out = run(&["monad", "kock", "mat:Z2", "--left", &xor, "--right", &xor]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("equal: true"));

    let out = run(&["monad", "check", "mat:Z2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("laws: hold") && text.contains("commutative: true"), "{text}");

    // xor is not a linear map over the boolean semiring
    let out = run(&["monad", "kock", "mat:bool2", "--left", &xor, "--right", &xor]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn ring_commands() {
    let out = run(&["ring", "end", "group:Z2"]);
    assert!(stdout(&out).contains("2 elements"));

    let out = run(&["ring", "maximal", "ring:Z4", "--subset", "0,1,2,3"]);
    let text = stdout(&out);
    assert!(text.contains("self-centralizing: true"), "{text}");

    let out = run(&["ring", "regular-opposite", "ring:UT2_F2"]);
    let text = stdout(&out);
    assert!(text.contains("commutant is the opposite ring: true"), "{text}");
    assert!(text.contains("balanced: false"), "{text}");
}
