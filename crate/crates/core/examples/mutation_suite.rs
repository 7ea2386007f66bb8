//! Breaks each model constraint in a generated model and shows that the
//! validator names exactly that constraint.
//!
//! cargo run --example mutation_suite -- [SEED]

use jstit::harness::mutation_suite;

fn main() {
    let seed = std::env::args().nth(1).map(|s| s.parse().expect("numeric seed")).unwrap_or(1);
    let outcomes = mutation_suite(seed);
    for o in &outcomes {
        println!("{o}");
    }
    if let Some(text) = outcomes.first().and_then(|o| o.model_text.as_ref()) {
        println!("\nfirst mutated model:\n{text}");
    }
}
