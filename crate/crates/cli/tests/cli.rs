use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const SQUARE_WAVE: &str = "discrete\nt 0 : p\nt 3 : q\nloop period 10 start 10\nt 0 : p\nt 3 : q\n";

fn mtlbv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtlbv")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    let out = mtlbv(args);
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn check_square_wave_against_bounds() {
    let dir = TempDir::new().unwrap();
    let w = write(&dir, "wave.word", SQUARE_WAVE);
    assert_eq!(code(&["check", "--word", &w, "G C{3}(10,inf) true & C{3}(10,inf) true"]), 0);
    assert_eq!(code(&["check", "--word", &w, "G C{2}(10,inf) true & C{2}(10,inf) true"]), 1);
}

#[test]
fn dense_word_outside_the_fragment_is_an_error() {
    let dir = TempDir::new().unwrap();
    let w = write(&dir, "d.word", "dense\nt 0 : p\nt 1/2 : q\n");
    assert_eq!(code(&["check", "--word", &w, "G p"]), 3);
    assert_eq!(code(&["check", "--word", &w, "F[0,1] q"]), 0);
}

#[test]
fn sat_and_witness_reverifies() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&["sat", "F[1,1] p & G !p"]), 1);
    let wit = path(&dir, "model.word");
    assert_eq!(code(&["sat", "F[2,2] p & X[1,1] q", "--witness", &wit]), 0);
    assert!(Path::new(&wit).exists());
    assert_eq!(code(&["check", "--word", &wit, "F[2,2] p & X[1,1] q"]), 0);
}

#[test]
fn validity_depends_on_the_alphabet() {
    assert_eq!(code(&["valid", "--alphabet", "p", "G p"]), 0);
    assert_eq!(code(&["valid", "--alphabet", "p,q", "F p"]), 1);
    assert_eq!(code(&["valid", "p | !p"]), 0);
}

#[test]
fn bv_examples() {
    let dir = TempDir::new().unwrap();
    let wit = path(&dir, "cex.word");
    assert_eq!(code(&["bv", "true", "1", "1", "--witness", &wit]), 1);
    // The counterexample breaks the bound it was produced for.
    assert_eq!(code(&["check", "--word", &wit, "C{1}(1,inf) true & G C{1}(1,inf) true"]), 1);
    // `G` starts strictly after position 0, so the first gap is free.
    assert_eq!(code(&["bv", "G X(2,inf) true", "1", "2"]), 1);
    let spaced = "X(2,inf) true & G X(2,inf) true";
    assert_eq!(code(&["bv", spaced, "1", "2"]), 0);
    assert_eq!(code(&["bv", spaced, "1", "2", "--style", "carousel"]), 0);
    assert_eq!(code(&["bv", spaced, "1", "2", "--fastpath"]), 0);
    assert_eq!(code(&["bv", spaced, "1", "3", "--fastpath-only"]), 2);
    assert_eq!(code(&["bv", "p U q", "1", "1", "--fastpath-only"]), 2);
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    assert_eq!(code(&["sat", "G F p & G F q", "--budget", "1"]), 2);
}

#[test]
fn errors_exit_with_3() {
    assert_eq!(code(&["sat", "F[3,1] p"]), 3);
    assert_eq!(code(&["sat", "--alphabet", "p", "q"]), 3);
    assert_eq!(code(&["no-such-command"]), 3);
    assert_eq!(code(&["check", "--word", "/nonexistent/word", "p"]), 3);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn reports_are_deterministic_and_json_is_well_formed() {
    let args = ["--format", "json", "bv", "true", "2", "3"];
    let (a, b) = (mtlbv(&args), mtlbv(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], "UNBOUNDED");
    assert_eq!(v["inputs"]["bound"], "2/3");
    assert!(v["artifact"].as_str().unwrap().starts_with("discrete"));
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn reduce_reports_the_gap_bound() {
    let out = mtlbv(&["reduce", "F[1,3](p & F[0,2] q)"]);
    assert!(stdout(&out).starts_with("reduce: 0/6"), "{}", stdout(&out));
}

#[test]
fn machine_bounded_counter_on_halting_program() {
    let dir = TempDir::new().unwrap();
    let prog = write(&dir, "prog.cm", "L0: inc v0\nL1: halt\n");
    let wit = path(&dir, "run.txt");
    assert_eq!(code(&["machine", "bounded-counter", &prog, "--beta", "0", "--budget", "100", "--witness", &wit]), 0);
    assert_eq!(fs::read_to_string(&wit).unwrap(), "<L0, 0>\n<L1, 1>\n");
    assert_eq!(code(&["machine", "bounded-counter", &prog, "--beta", "1", "--budget", "100"]), 1);
}

#[test]
fn machine_transform_and_explore() {
    let dir = TempDir::new().unwrap();
    let prog = write(&dir, "prog.cm", "L0: inc v0\nL1: if v0 > 0 goto L2, L2\nL2: halt\n");
    let out_path = path(&dir, "t.cm");
    assert_eq!(code(&["machine", "transform", &prog, "--output", &out_path]), 0);
    let transformed = fs::read_to_string(&out_path).unwrap();
    assert_eq!(transformed, "L0: inc v1\nL1: if v1 > 0 goto L2, L2\nL2: inc v0\nL3: halt\n");
    assert_eq!(code(&["machine", "bounded-counter", &out_path, "--beta", "0", "--budget", "10"]), 0);
    assert_eq!(code(&["machine", "explore", &prog, "--steps", "5"]), 0);
    let looping = write(&dir, "loop.cm", "L0: inc v0\nL1: if v0 > 0 goto L0, L0\nL2: halt\n");
    assert_eq!(code(&["machine", "explore", &looping, "--steps", "5"]), 2);
    let blocked = write(&dir, "blocked.cm", "L0: dec v0\nL1: halt\n");
    assert_eq!(code(&["machine", "explore", &blocked, "--steps", "5"]), 1);
}

#[test]
fn machine_encode_prints_a_parseable_formula() {
    let dir = TempDir::new().unwrap();
    let prog = write(&dir, "prog.cm", "L0: inc v0\nL1: dec v1\nL2: if v0 > 0 goto L3, L3\nL3: halt\n");
    let out = mtlbv(&["machine", "encode", &prog]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let formula = text.split("\n\n").nth(1).unwrap().trim();
    assert_eq!(code(&["reduce", formula]), 0);
    let out = mtlbv(&["machine", "encode", &prog, "--overflow", "1"]);
    assert!(stdout(&out).contains("z0"));
}

#[test]
fn machine_encode_run_round_trips() {
    let dir = TempDir::new().unwrap();
    let prog = write(&dir, "prog.cm", "L0: inc v0\nL1: inc v1\nL2: if v0 > 0 goto L0, L3\nL3: halt\n");
    let w = path(&dir, "run.word");
    assert_eq!(code(&["machine", "encode-run", &prog, "--steps", "3", "--output", &w, "--seed", "7"]), 0);
    assert_eq!(code(&["machine", "decode", &prog, &w]), 0);
    let bad = write(&dir, "bad.word", "dense\nt 0 : p1\n");
    assert_eq!(code(&["machine", "decode", &prog, &bad]), 1);
}

#[test]
fn corpus_commands_are_seeded() {
    let a = mtlbv(&["corpus", "words", "--count", "3", "--seed", "5"]);
    let b = mtlbv(&["corpus", "words", "--count", "3", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let out = mtlbv(&["corpus", "formulas", "--max-size", "2"]);
    assert!(stdout(&out).contains("count: 14"));
}
