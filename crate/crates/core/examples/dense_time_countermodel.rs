//! The dense-time countermodel: a formula that holds in every discrete model
//! fails at (0, h2) of the quotient, which breaks exactly one constraint.
//!
//! cargo run --example dense_time_countermodel

use jstit::harness::{prop1_agents, prop1_history_label, prop1_quotient, PROP1_ANTECEDENT, PROP1_WITNESS};
use jstit::model::validate;
use jstit::semantics::{EvalOptions, Evaluator};
use jstit::syntax::parse_formula;

fn main() {
    let (model, a) = prop1_quotient();
    print!("{model}");
    println!("A := {a}\n");
    let mut ev = Evaluator::new(&model, EvalOptions::waived()).expect("waived");
    let parts = [
        ("A", a.clone()),
        ("antecedent", parse_formula(PROP1_ANTECEDENT, &prop1_agents()).unwrap()),
        ("witness", parse_formula(PROP1_WITNESS, &prop1_agents()).unwrap()),
    ];
    for &(m, h) in model.pairs() {
        let values: Vec<String> =
            parts.iter().map(|(n, f)| format!("{n}={}", ev.eval(m, h, f).unwrap())).collect();
        println!("({},{}) {}", model.moment_name(m), prop1_history_label(&model, h), values.join(" "));
    }
    println!();
    print!("{}", validate(&model));
}
