//! Replaces S4 rule steps by S4 axiom instances and rechecks the result.
//!
//! cargo run --example eliminate_s4

use jstit::proofkit::{check_proof, corpus, eliminate_s4, ConstantSpecification, Mode};

fn main() {
    let cs = ConstantSpecification::empty();
    for entry in corpus().into_iter().filter(|e| e.proof.s4_steps() > 0) {
        let out = eliminate_s4(&entry.proof, &cs).expect("corpus proofs check");
        let concl = check_proof(&out, &cs, Mode::PiPrime).expect("rewritten proof checks without the rule");
        println!(
            "{}: {} lines with {} S4 steps -> {} lines without; same conclusion: {}",
            entry.name,
            entry.proof.len(),
            entry.proof.s4_steps(),
            out.len(),
            Some(&concl) == entry.proof.conclusion()
        );
    }
    let first = corpus().into_iter().find(|e| e.name == "AS4-n1").unwrap();
    println!("\n{}", eliminate_s4(&first.proof, &cs).unwrap());
}
