use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn malcev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_malcev"))
        .args(args)
        .env_remove("MALCEV_GUARD")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

const CORRUPTED_A: &str = "size 4\nop · 2\ntable ·\n0 0 0 0\n0 1 0 0\n2 2 2 2\n2 3 2 2\n";

#[test]
fn check_exit_codes() {
    let fail = malcev(&["check", "A4", "(· x y) = (· y x)"]);
    assert_eq!(fail.status.code(), Some(1));
    assert_eq!(stdout(&fail), "fail (· x y) = (· y x) at x=0, y=2\n");
    assert_eq!(malcev(&["check", "LZ2", "(· x y) = x"]).status.code(), Some(0));
    assert_eq!(malcev(&["check", "A4", "(· x x) = x"]).status.code(), Some(0));
    assert_eq!(malcev(&["check", "A4", "(· x y"]).status.code(), Some(2));
    assert_eq!(malcev(&["check", "no-such-algebra", "x = x"]).status.code(), Some(2));
    assert_eq!(malcev(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn replica_and_membership() {
    assert_eq!(stdout(&malcev(&["replica", "A4", "--variety", "LZ"])), "{{0,1},{2,3}}\n");
    assert_eq!(stdout(&malcev(&["replica", "LZ2", "--variety", "LZ"])), "{{0},{1}}\n");
    assert_eq!(stdout(&malcev(&["replica", "A4", "--variety", "trivial"])), "{{0,1,2,3}}\n");
    let member = malcev(&["member", "A4", "--v", "C", "--w", "LZ"]);
    assert_eq!(member.status.code(), Some(0));
    assert!(stdout(&member).starts_with("verdict: member\nreplica: {{0,1},{2,3}}\n"));
    assert_eq!(malcev(&["member", "B3", "--v", "C", "--w", "LZ"]).status.code(), Some(1));
    let probe = malcev(&["probe-h", "A4", "--v", "C", "--w", "LZ"]);
    assert_eq!(probe.status.code(), Some(1));
    assert!(stdout(&probe).contains("theta {{0,2},{1},{3}}"));
}

#[test]
fn custom_varieties_from_files() {
    let comm = temp("(· x y) = (· y x)\n");
    let lz = temp("(· x y) = x\n");
    let path = |f: &NamedTempFile| f.path().to_str().unwrap().to_string();
    let out = malcev(&["member", "A4", "--v", &path(&comm), "--w", &path(&lz)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    // membership needs no decision, but Σ^p does
    let no_decision = malcev(&["sigma-p", "--v-base", &path(&lz), "--w", &path(&comm)]);
    assert_eq!(no_decision.status.code(), Some(2));
    let generated = malcev(&["replica", "A4", "--variety", &path(&lz), "--generated-by", "LZ2"]);
    assert_eq!(stdout(&generated), "{{0,1},{2,3}}\n");
    let bad_generator = malcev(&["replica", "A4", "--variety", &path(&lz), "--generated-by", "SL2"]);
    assert_eq!(bad_generator.status.code(), Some(2));
}

#[test]
fn sigma_p_and_witnesses() {
    let lz = temp("op · 2\n(· x y) = x\n");
    let lz = lz.path().to_str().unwrap();
    let s = stdout(&malcev(&["sigma-p", "--v-base", lz, "--w", "S", "--max-size", "3"]));
    assert!(s.lines().any(|l| l == "(· x x) = x"));
    let empty = malcev(&["sigma-p", "--v-base", lz, "--w", "U2,0", "--max-size", "4"]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(stdout(&empty), "");
    let in_lz2 = malcev(&["sigma-p", "--v-base", lz, "--w", "S", "--holds-in", "LZ2"]);
    assert_eq!(in_lz2.status.code(), Some(0));

    let found = malcev(&["find-fg", "--v", "GP", "--w", "B:group", "--max-size", "6"]);
    assert_eq!(found.status.code(), Some(0));
    assert!(stdout(&found).ends_with("status: verified\n"));
    let none = malcev(&["find-fg", "--v", "S", "--w", "S", "--max-size", "8"]);
    assert_eq!(none.status.code(), Some(1));
}

#[test]
fn published_examples_pass_and_list() {
    let run = malcev(&["verify-paper"]);
    assert_eq!(run.status.code(), Some(0), "{}", stdout(&run));
    assert!(stdout(&run).ends_with("15/15 checks passed\n"));
    let list = malcev(&["verify-paper", "--list"]);
    assert_eq!(list.status.code(), Some(0));
    assert!(stdout(&list).lines().all(|l| !l.starts_with("ok") && !l.starts_with("FAIL")));
    assert_eq!(stdout(&list).lines().count(), 15);
}

#[test]
fn corrupted_fixture_fails_by_name() {
    let bad = temp(CORRUPTED_A);
    let arg = format!("A={}", bad.path().to_str().unwrap());
    let run = malcev(&["verify-paper", "--fixture", &arg]);
    assert_eq!(run.status.code(), Some(1));
    let out = stdout(&run);
    assert!(out.contains("FAIL a-table"), "{out}");
    assert!(out.contains("ok   free-band-2"));
}

#[test]
fn output_is_deterministic() {
    let lz = temp("op · 2\n(· x y) = x\n");
    let lz = lz.path().to_str().unwrap();
    let runs: [&[&str]; 5] = [
        &["verify-paper"],
        &["--format", "structured", "member", "B3", "--v", "C", "--w", "LZ"],
        &["congruences", "BA4"],
        &["sigma-p", "--v-base", lz, "--w", "B", "--max-size", "5"],
        &["--format", "structured", "find-fg", "--v", "L", "--w", "B:lattice"],
    ];
    for args in runs {
        assert_eq!(malcev(args).stdout, malcev(args).stdout, "{args:?}");
    }
}

#[test]
fn structured_output_is_json() {
    let out = malcev(&["--format", "structured", "replica", "A4", "--variety", "LZ"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["replica"], serde_json::json!([[0, 1], [2, 3]]));
    assert_eq!(v["pass"], true);
}

#[test]
fn guard_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_malcev"))
        .args(["congruences", "A4"])
        .env("MALCEV_GUARD", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_malcev"))
        .args(["congruences", "A4"])
        .env("MALCEV_GUARD", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
