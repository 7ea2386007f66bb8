use std::fs;
use std::path::Path;

use jstit::proofkit::{
    check_proof, corpus, corpus_agents, eliminate_s4, ConstantSpecification, CsError, Mode, Proof, ProofFormatError,
    LINES_PER_S4_STEP,
};
use jstit::syntax::AgentSet;

fn dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn proof(text: &str) -> Proof {
    Proof::parse(text).unwrap()
}

fn empty() -> ConstantSpecification {
    ConstantSpecification::empty()
}

#[test]
fn shipped_corpus_files_match_the_built_in_corpus() {
    let entries = corpus();
    let files = fs::read_dir(dir().join("corpus")).unwrap().count();
    assert_eq!(files, entries.len());
    for e in entries {
        let path = dir().join("corpus").join(format!("{}.proof", e.name.to_lowercase()));
        let text = fs::read_to_string(&path).unwrap_or_else(|err| panic!("{}: {err}", path.display()));
        assert_eq!(text, e.proof.to_text(), "{}", e.name);
        let parsed = proof(&text);
        assert_eq!(parsed, e.proof);
        let concl = check_proof(&parsed, &empty(), Mode::Pi).unwrap_or_else(|r| panic!("{}: {r}", e.name));
        assert_eq!(concl.normalize(), e.statement.normalize(), "{}", e.name);
        assert_eq!(parsed.agents, corpus_agents());
    }
}

#[test]
fn eliminating_s4_adds_a_fixed_number_of_lines() {
    for e in corpus().into_iter().filter(|e| e.proof.s4_steps() > 0) {
        let out = eliminate_s4(&e.proof, &empty()).unwrap();
        assert_eq!(out.len(), e.proof.len() + LINES_PER_S4_STEP * e.proof.s4_steps(), "{}", e.name);
        assert_eq!(check_proof(&out, &empty(), Mode::PiPrime).ok().as_ref(), e.proof.conclusion());
        let reparsed = proof(&out.to_text());
        assert_eq!(reparsed, out);
    }
}

#[test]
fn proofs_without_s4_steps_pass_through_elimination() {
    let t0 = corpus().into_iter().find(|e| e.name == "T0").unwrap();
    assert_eq!(eliminate_s4(&t0.proof, &empty()).unwrap(), t0.proof);
}

#[test]
fn rejections_name_the_offending_line() {
    let cases = [
        ("1. p ; ax:A0-1\n", 1),
        ("1. p -> q -> p ; ax:A0-1\n2. q ; mp:1,1\n", 2),
        ("1. p -> q -> p ; ax:A0-1\n2. []p ; nec:1\n", 2),
        ("1. p -> q -> p ; ax:A0-1\n2. p ; mp:1,3\n", 2),
        ("1. c1:(p -> q -> p) ; cs\n", 1),
    ];
    for (text, line) in cases {
        let err = check_proof(&proof(text), &empty(), Mode::Pi).unwrap_err();
        assert_eq!(err.line, line, "{text}: {err}");
    }
}

#[test]
fn the_s4_rule_is_unavailable_with_the_axiom() {
    let p = proof(include_str!("../corpus/as4-n1.proof"));
    assert!(check_proof(&p, &empty(), Mode::Pi).is_ok());
    assert_eq!(check_proof(&p, &empty(), Mode::PiPrime).unwrap_err().line, 2);
}

#[test]
fn constant_specifications_are_checked() {
    let j = AgentSet::new(["j"]).unwrap();
    let cs = ConstantSpecification::parse(include_str!("../data/sample.cs"), &j).unwrap();
    assert_eq!(cs.len(), 3);
    let p = proof(include_str!("../data/uses_cs.proof"));
    assert!(check_proof(&p, &cs, Mode::Pi).is_ok());
    assert_eq!(check_proof(&p, &empty(), Mode::Pi).unwrap_err().line, 1);

    assert_eq!(cs.validate(&j), Ok(()));

    let check = |text: &str| ConstantSpecification::parse(text, &j).unwrap().validate(&j);
    assert!(matches!(check("c2:c1:(p -> (q -> p))\n"), Err(CsError::NotDownwardClosed { .. })));
    assert!(matches!(check("c1:(p -> q)\n"), Err(CsError::NotAnAxiom { .. })));
    assert!(matches!(check("x:(p -> (q -> p))\n"), Err(CsError::NotConstantAssertion(_))));
    assert!(matches!(ConstantSpecification::parse("c1:(p ->\n", &j), Err(CsError::Syntax { line: 1, .. })));
}

#[test]
fn malformed_proof_files() {
    for bad in ["1. p ; frob\n", "2. p -> q -> p ; ax:A0-1\n", "1. p -> ; ax:A0-1\n", "agents: j j\n"] {
        assert!(Proof::parse(bad).is_err(), "{bad:?}");
    }
    assert!(matches!(Proof::parse("agents: j j\n"), Err(ProofFormatError::Agents(_))));
    let p = proof("# comment\n1. p -> q -> p ; ax:A0-1\n");
    assert_eq!(p.agents, AgentSet::new(["j"]).unwrap());
}
