//! Evaluates formulas at every pair of a model, with and without `E t`.
//!
//! cargo run --example evaluate_formulas

use jstit::model::load_model;
use jstit::semantics::{EvalOptions, Evaluator};
use jstit::syntax::{parse_formula_with, ParseOptions};

const MODEL: &str = include_str!("../data/two_agents.model");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = load_model(MODEL)?;
    let mut ev = Evaluator::new(&model, EvalOptions::default().with_et())?;
    let formulas = [
        "Prove(i, x, p)",
        "Prove(j, x, p)",
        "Proven(x, p)",
        "[i]E x & <>~E x & x:p",
        "K x:p",
        "<>q & <>~q",
    ];
    let mut header = format!("{:<28}", "");
    for &(m, h) in model.pairs() {
        header.push_str(&format!(" {:>5}", format!("{}/{}", model.moment_name(m), model.history_name(h))));
    }
    println!("{header}");
    for text in formulas {
        let f = parse_formula_with(text, ParseOptions::new(model.agents()).with_et(true))?;
        let mut row = format!("{text:<28}");
        for &(m, h) in model.pairs() {
            row.push_str(&format!(" {:>5}", if ev.eval(m, h, &f)? { "T" } else { "." }));
        }
        println!("{row}");
    }
    Ok(())
}
