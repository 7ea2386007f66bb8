//! Checks a hand-written proof, with and without a constant specification.
//!
//! cargo run --example proof_checking

use jstit::proofkit::{check_proof, ConstantSpecification, Mode, Proof};

const PROOF: &str = "\
agents: j
1. Kp -> p ; ax:A7-T
2. K(Kp -> p) ; nec:1
3. c1:(Kp -> p) ; cs
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let proof = Proof::parse(PROOF)?;
    let cs = ConstantSpecification::parse(include_str!("../data/sample.cs"), &proof.agents)?;
    cs.validate(&proof.agents)?;
    match check_proof(&proof, &ConstantSpecification::empty(), Mode::Pi) {
        Ok(c) => println!("empty CS: accepted {c}"),
        Err(r) => println!("empty CS: rejected at {r}"),
    }
    println!("sample CS: accepted {}", check_proof(&proof, &cs, Mode::Pi)?);
    Ok(())
}
