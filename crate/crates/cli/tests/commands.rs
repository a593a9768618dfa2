use std::io::Write;
use std::process::{Command, Output, Stdio};

fn mrb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mrb"))
        .args(args)
        .env_remove("MRB_SEED")
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mrb"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_golden_and_json() {
    let o = mrb(&["eval", "-e", "u_2*u_2", "--kappa", "2"]);
    assert_eq!(stdout(&o).trim(), "6*u_4 + 12*u_2 + 4*u_0");
    let o = mrb(&["eval", "-e", "u_1*u_1", "--kappa", "-1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    assert_eq!(v["terms"][0]["coeff"], "2");
}

#[test]
fn hopf_operations_use_lambda() {
    let o = mrb(&["eval", "-e", "antipode(u_1)", "--lambda", "2"]);
    assert_eq!(stdout(&o).trim(), "-u_1 - 4*u_0");
    let o = mrb(&["eval", "-e", "counit(u_3)"]);
    assert_eq!(stdout(&o).trim(), "-1");
    // no coalgebra in pure kappa mode
    assert_eq!(
        mrb(&["eval", "-e", "antipode(u_1)", "--kappa", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn parse_errors_exit_2_with_position() {
    let o = mrb(&["eval", "-e", "[x|", "--base", "poly:x"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 1, column 4"), "{err}");
    assert!(err.contains("expected expression or `]`"), "{err}");
    assert_eq!(
        mrb(&["eval", "-e", "u_1", "--base", "poly:x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(mrb(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn repl_session() {
    let o = with_stdin(&["repl"], "u_1*u_1\n:set kappa 2\nu_1*u_1\n:quit\n");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("2*u_2 - u_0"), "{out}");
    assert!(out.contains("2*u_2 + 2*u_0"), "{out}");
    let o = with_stdin(&["repl"], "u_1 *\nu_0\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("u_0"));
}

#[test]
fn stuffle_counts() {
    let o = mrb(&["stuffle", "--m", "2", "--n", "2"]);
    let out = stdout(&o);
    assert!(out.contains("|J(2,2,1)| = 6"), "{out}");
    assert!(out.contains("|J(2,2)| = 13"), "{out}");
    let o = mrb(&[
        "stuffle",
        "--m",
        "1",
        "--n",
        "2",
        "--r",
        "1",
        "--list-pairs",
    ]);
    assert!(stdout(&o).contains("[a0*b0|a1*b1*b2]"), "{}", stdout(&o));
    assert_eq!(
        mrb(&["stuffle", "--m", "2", "--n", "2", "--r", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn opcheck_exit_codes() {
    let o = mrb(&["opcheck", "--instance", "laurent-split", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
    let dir = std::env::temp_dir().join(format!("mrb-opcheck-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"default": "identity", "weight": 0}"#).unwrap();
    let o = mrb(&[
        "opcheck",
        "--file",
        path.to_str().unwrap(),
        "--samples",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("u = 1, v = 1"));
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(
        mrb(&["opcheck", "--instance", "bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_mrb"))
        .args([
            "verify",
            "--suite",
            "bialgebra",
            "--seed",
            "1",
            "--samples",
            "10",
        ])
        .env("MRB_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("suite bialgebra (seed 42)"));
    let o = Command::new(env!("CARGO_BIN_EXE_mrb"))
        .args(["verify", "--suite", "hopf"])
        .env("MRB_SEED", "nope")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
