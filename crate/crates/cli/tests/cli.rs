use std::io::Write;
use std::process::{Command, Output, Stdio};

fn codebreak(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_codebreak"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn text(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_figures() {
    let o = codebreak(&["verify", "figures"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(text(&o).starts_with("PASS figures"), "{}", text(&o));
    let o = codebreak(&["verify", "no-such-thing"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn play_against_a_seeded_code() {
    let dict = "complete:AB:2";
    let o = codebreak(&["play", "--dict", dict, "--seed", "3"], "AC\nAA\nAB\nBA\nBB\n");
    assert_eq!(o.status.code(), Some(0));
    let out = text(&o);
    assert!(out.starts_with("unknown symbol"), "{out}");
    // Seed 3 draws the fourth word, BB.
    assert!(out.contains("solved in 4"), "{out}");
}

#[test]
fn simulate_writes_a_replayable_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("code.txt");
    let out = dir.path().join("t.jsonl");
    std::fs::write(&code, "CAB\n").unwrap();
    let o = codebreak(
        &[
            "simulate", "--strategy", "fresh", "--dict", "complete:ABC:3",
            "--code", code.to_str().unwrap(), "--out", out.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = std::fs::read_to_string(&out).unwrap();
    assert!(lines.lines().count() >= 3);
    assert!(lines.lines().last().unwrap().contains("won"));
}

#[test]
fn oracles() {
    let o = codebreak(&["oracle", "rearrange", "--code", "0,1,2,3", "--guess", "1,0,3,2"], "");
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
    let o = codebreak(
        &["oracle", "winning-set", "--space", "injective:3:3", "--guess", "0,1,2", "--guess", "1,0,2", "--guess", "0,2,1"],
        "",
    );
    assert_eq!(text(&o).trim(), "not winning");
}
