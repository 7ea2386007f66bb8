//! Writes every corpus derivation as a proof file and checks it back.
//!
//! cargo run --example export_corpus -- [DIR]

use std::path::PathBuf;

use jstit::proofkit::{check_proof, corpus, ConstantSpecification, Mode, Proof};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    std::fs::create_dir_all(&dir)?;
    for entry in corpus() {
        let path = dir.join(format!("{}.proof", entry.name.to_lowercase()));
        let text = entry.proof.to_text();
        std::fs::write(&path, &text)?;
        let back = Proof::parse(&text)?;
        let concl = check_proof(&back, &ConstantSpecification::empty(), Mode::Pi)?;
        println!("{:<10} {:>3} lines  {}  -> {}", entry.name, back.len(), concl, path.display());
    }
    Ok(())
}
