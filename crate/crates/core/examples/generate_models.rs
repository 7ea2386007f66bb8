//! Generates random valid models and prints one in the model file format.
//!
//! cargo run --example generate_models -- [SEED]

use jstit::harness::{gen_model, EvidenceMode, GenParams};
use jstit::model::validate;

fn main() {
    let seed = std::env::args().nth(1).map(|s| s.parse().expect("numeric seed")).unwrap_or(7);
    for mode in [EvidenceMode::Everything, EvidenceMode::SparseClosed] {
        let params = GenParams { seed, evidence_mode: mode, extra_epistemic_pairs: 2, ..GenParams::default() };
        let model = gen_model(&params).expect("generator output is valid");
        println!("# seed {seed}, {mode:?}: {} moments, {} histories", model.moment_count(), model.history_count());
        print!("{model}");
        print!("# {}", validate(&model));
        println!();
    }
}
