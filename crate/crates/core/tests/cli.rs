use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use iki::io::{parse_instance, parse_solution};
use iki::oracle::{brute_mwccs, brute_mwis};
use tempfile::TempDir;

fn iki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iki")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const C5: &str = "p iki 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&iki(&[])), 64);
    assert_eq!(code(&iki(&["solve", "mwccs", "--c", "x", "f"])), 64);
    assert_eq!(code(&iki(&["frobnicate"])), 64);
    assert_eq!(code(&iki(&["--help"])), 0);
}

#[test]
fn missing_file_and_bad_input() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.txt");
    assert_eq!(code(&iki(&["solve", "mwis", s(&missing)])), 66);
    let bad = write(&dir, "bad.txt", "p iki 2 1\ne 1 3\n");
    let out = iki(&["solve", "mwis", s(&bad)]);
    assert_eq!(code(&out), 65);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let unknown = write(&dir, "c5.txt", C5);
    assert_eq!(code(&iki(&["recognize", "--class", "pentagon", s(&unknown)])), 64);
}

#[test]
fn bad_epsilon_is_rejected() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "c5.txt", C5);
    let out = iki(&["solve", "mwccs", "--c", "1", "--ell", "2", "--mode", "randomized", "--epsilon", "1.5", s(&inst)]);
    assert_eq!(code(&out), 64);
}

#[test]
fn recognize_reports_membership_and_witness() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", C5);
    let out = iki(&["recognize", "--class", "chordal", s(&c5)]);
    assert_eq!(code(&out), 2);
    let text = stdout(&out);
    assert!(text.starts_with("no\ncycle "));
    assert_eq!(text.lines().nth(1).unwrap().split(' ').count(), 6);

    let path = write(&dir, "p4.txt", "p iki 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    let out = iki(&["recognize", "--class", "chordal", s(&path)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("yes\npeo "));
    assert_eq!(code(&iki(&["recognize", "--class", "cluster", s(&path)])), 2);
    assert_eq!(code(&iki(&["recognize", "--class", "k1kfree:3", s(&path)])), 0);
    assert_eq!(code(&iki(&["recognize", "--class", "two-simplicial", s(&c5)])), 0);
    assert_eq!(code(&iki(&["recognize", "--class", "inductive:1", s(&c5)])), 2);
    assert_eq!(code(&iki(&["recognize", "--class", "inductive:2", s(&c5)])), 0);
}

#[test]
fn solve_matches_oracle_on_generated_overlay() {
    let dir = TempDir::new().unwrap();
    let inst_path = dir.path().join("overlay.txt");
    let sol_path = dir.path().join("sol.txt");
    for seed in 0..5 {
        let seed = seed.to_string();
        let gen = iki(&["generate", "overlay", "--n", "10", "--seed", &seed, "--max-weight", "9", "-o", s(&inst_path)]);
        assert_eq!(code(&gen), 0);
        let inst = parse_instance(&inst_path).unwrap();
        let out = iki(&["solve", "mwccs", "--c", "2", "--ell", "4", "-o", s(&sol_path), s(&inst_path)]);
        assert_eq!(code(&out), 0);
        let rec = parse_solution(&sol_path).unwrap();
        let sol = rec.to_solution(inst.n()).unwrap();
        sol.validate_colorable(&inst, 2, 4).unwrap();
        assert_eq!(rec.weight, brute_mwccs(&inst, 2, Some(4)).unwrap().weight);
        assert_eq!(rec.mode, "exhaustive");

        let out = iki(&["solve", "mwis", "--ell", "3", "-o", s(&sol_path), s(&inst_path)]);
        assert_eq!(code(&out), 0);
        assert_eq!(parse_solution(&sol_path).unwrap().weight, brute_mwis(&inst, Some(3)).unwrap().weight);
    }
}

#[test]
fn timing_line_only_on_request() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", C5);
    // Untagged input must be chordal for an unbounded solve.
    assert_eq!(code(&iki(&["solve", "mwis", s(&c5)])), 64);
    let inst = write(&dir, "p4.txt", "p iki 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    let plain = stdout(&iki(&["solve", "mwis", s(&inst)]));
    assert!(!plain.contains("elapsed_ms"));
    assert!(plain.starts_with("weight 2\n"));
    let timed = stdout(&iki(&["solve", "mwis", "--timing", s(&inst)]));
    assert!(timed.contains("elapsed_ms"));
}

#[test]
fn construction_pipeline() {
    let dir = TempDir::new().unwrap();
    let mcc = dir.path().join("mcc.txt");
    let reduced = dir.path().join("reduced.txt");
    let names = dir.path().join("names.txt");
    assert_eq!(code(&iki(&["generate", "mcc", "--k", "2", "--sizes", "2,2", "--plant", "--seed", "4", "-o", s(&mcc)])), 0);
    assert_eq!(code(&iki(&["oracle", "mcc", s(&mcc)])), 0);
    let out = iki(&["reduce", "construction1", s(&mcc), "-o", s(&reduced), "--names", s(&names)]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&reduced).unwrap();
    assert!(text.starts_with("c target 5\n"));
    assert!(std::fs::read_to_string(&names).unwrap().starts_with("k 2\n"));
    let out = iki(&["oracle", "mwis", s(&reduced)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("weight 5\n"));
    assert_eq!(code(&iki(&["recognize", "--class", "kmino:3", s(&reduced)])), 0);
    assert_eq!(code(&iki(&["recognize", "--class", "two-simplicial", s(&reduced)])), 0);
}

#[test]
fn hardness_gadgets_via_cli() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", C5);
    let out = dir.path().join("out.txt");
    assert_eq!(code(&iki(&["reduce", "indkind:2", s(&c5), "-o", s(&out)])), 0);
    // C5 has independence number 2, so the gadget stays inductive 2-independent.
    assert_eq!(code(&iki(&["recognize", "--class", "inductive:2", s(&out)])), 0);
    assert_eq!(code(&iki(&["reduce", "k1kfree:2", s(&c5), "-o", s(&out)])), 0);
    assert_eq!(code(&iki(&["recognize", "--class", "k1kfree:2", s(&out)])), 2);
    assert_eq!(code(&iki(&["reduce", "indkind:x", s(&c5)])), 64);
}

#[test]
fn oracle_hamiltonian_exit_codes() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", C5);
    assert_eq!(code(&iki(&["oracle", "hamiltonian", s(&c5)])), 0);
    let p3 = write(&dir, "p3.txt", "p iki 3 2\ne 1 2\ne 2 3\n");
    assert_eq!(code(&iki(&["oracle", "hamiltonian", s(&p3)])), 2);
}

#[test]
fn oracle_size_cap_exits_3() {
    let dir = TempDir::new().unwrap();
    let big = dir.path().join("big.txt");
    assert_eq!(code(&iki(&["generate", "chordal", "--n", "40", "-o", s(&big)])), 0);
    assert_eq!(code(&iki(&["oracle", "mwccs", "--c", "2", s(&big)])), 3);
}

#[test]
fn colorful_solve_matches_oracle() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g.txt");
    assert_eq!(code(&iki(&["generate", "chordal", "--n", "16", "--colors", "5", "--max-weight", "10", "-o", s(&path)])), 0);
    let inst = parse_instance(&path).unwrap();
    let out = iki(&["solve", "colorful", s(&path)]);
    assert_eq!(code(&out), 0);
    let sol_path = write(&dir, "sol.txt", &stdout(&out));
    let sol = parse_solution(&sol_path).unwrap().to_solution(inst.n()).unwrap();
    sol.validate_colorful(&inst).unwrap();
    assert_eq!(sol.weight, iki::oracle::brute_colorful_is(&inst).unwrap().weight);
}
