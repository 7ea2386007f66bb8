use std::fs;
use std::path::PathBuf;

use jstit::cli::{run, CliOutput};
use jstit::proofkit::{check_proof, ConstantSpecification, Mode, Proof};

fn path(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel).display().to_string()
}

fn jstit(args: &[&str]) -> CliOutput {
    run(std::iter::once("jstit").chain(args.iter().copied()))
}

fn expect(args: &[&str], code: i32, stdout: &str) {
    let out = jstit(args);
    assert_eq!(out.code, code, "{args:?}: {}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains(stdout), "{args:?} printed {:?}", out.stdout);
}

#[test]
fn parse_prints_canonical_forms() {
    expect(&["parse", "-e", "(p&q)->r"], 0, "p & q -> r\n");
    expect(&["parse", "-e", "E x", "--enable-et"], 0, "Ex\n");
    expect(&["parse", "-e", "E x"], 2, "");
    expect(&["parse", "-e", "p &"], 2, "");

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("formulas.txt");
    fs::write(&file, "# two formulas\np|q\n\n[j]<>p\n").unwrap();
    let out = jstit(&["parse", "-f", file.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.lines().count(), 2);
}

#[test]
fn validate_reports_violations() {
    expect(&["validate", &path("data/two_agents.model")], 0, "ok");
    expect(&["validate", &path("data/broken_transparency.model")], 1, "epistemic-transparency @ u");
    expect(&["validate", &path("data/prop1_quotient.model")], 1, "no-new-proofs-guaranteed @ mid");
    expect(&["validate", "/nonexistent/model"], 2, "");
}

#[test]
fn eval_and_valid_verdicts() {
    let m = path("data/two_agents.model");
    expect(&["eval", &m, "-m", "r", "-l", "u", "-e", "Prove(i, x, p)"], 0, "true");
    expect(&["eval", &m, "-m", "r", "-l", "u", "-e", "[i]q"], 1, "false");
    expect(&["eval", &m, "-m", "r", "-l", "u", "-e", "[i]E x", "--enable-et"], 0, "true");
    expect(&["eval", &m, "-m", "nowhere", "-l", "u", "-e", "p"], 2, "");
    expect(&["valid", &m, "-e", "q"], 1, "falsified at");
    expect(&["valid", &m, "-e", "[]p"], 0, "");

    let broken = path("data/broken_transparency.model");
    expect(&["eval", &broken, "-m", "r", "-l", "u", "-e", "p"], 1, "");
    expect(&["eval", &broken, "-m", "r", "-l", "u", "-e", "p", "--waive-validation"], 0, "true");
}

#[test]
fn proof_checking() {
    expect(&["prove", "check", &path("corpus/t0.proof")], 0, "accepted: Kp -> []p");
    expect(&["prove", "check", &path("corpus/as4-n1.proof"), "--pi-prime"], 1, "rejected: line 2");
    expect(&["prove", "check", &path("data/uses_cs.proof")], 1, "rejected: line 1");
    expect(&["prove", "check", &path("data/uses_cs.proof"), "--cs", &path("data/sample.cs")], 0, "accepted");

    let dir = tempfile::tempdir().unwrap();
    let bad_cs = dir.path().join("bad.cs");
    fs::write(&bad_cs, "c1:(p -> q)\n").unwrap();
    expect(&["prove", "check", &path("data/uses_cs.proof"), "--cs", bad_cs.to_str().unwrap()], 2, "");
}

#[test]
fn eliminate_s4_writes_a_checkable_proof() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.proof");
    let input = path("corpus/s4-double.proof");
    let res = jstit(&["prove", "eliminate-s4", &input, "-o", out.to_str().unwrap()]);
    assert_eq!(res.code, 0, "{}", res.stderr);

    let rewritten = Proof::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(rewritten.s4_steps(), 0);
    let original = Proof::parse(&fs::read_to_string(&input).unwrap()).unwrap();
    let concl = check_proof(&rewritten, &ConstantSpecification::empty(), Mode::PiPrime).unwrap();
    assert_eq!(Some(&concl), original.conclusion());
    expect(&["prove", "check", out.to_str().unwrap(), "--pi-prime"], 0, "accepted");
}

#[test]
fn fuzz_and_demos() {
    expect(&["fuzz", "--models", "4", "--instances", "3", "--seed", "9"], 0, "models: 4, checks: ");
    expect(&["fuzz", "--models", "4", "--instances", "3", "--cs", &path("data/sample.cs")], 0, "counterexamples: 0");
    expect(&["demo", "prop1"], 0, "A falsified at (0,h2)");
    expect(&["demo", "fmp", "--models", "8", "--seed", "3"], 0, "ok");
    expect(&["demo", "mutations", "--seed", "1"], 0, "exact epistemic-transparency");
}

#[test]
fn usage_errors_exit_with_two() {
    expect(&[], 2, "");
    expect(&["frobnicate"], 2, "");
    expect(&["eval", &path("data/two_agents.model"), "-e", "p"], 2, "");
    let help = jstit(&["--help"]);
    assert_eq!(help.code, 0);
    for sub in ["parse", "validate", "eval", "valid", "prove", "fuzz", "demo"] {
        assert!(help.stdout.contains(sub), "help lacks {sub}");
    }
}
