//! Parses formulas, prints them back, and shows the primitive form.
//!
//! cargo run --example parse_and_print -- "K(<>p & <>~p)" "x:p -> (x + y):p"

use jstit::syntax::{parse_formula_with, print_formula, ParseOptions};

fn main() {
    let mut inputs: Vec<String> = std::env::args().skip(1).collect();
    if inputs.is_empty() {
        inputs = [
            "K(<>p & <>~p)",
            "Prove(j, x, p) -> ~Proven(x, p) & [j]Prove(j, x, p)",
            "s:(p -> q) -> (t:p -> (s*t):q)",
            "<j>~p | ~(c1 + !x):false",
        ]
        .map(String::from)
        .to_vec();
    }
    for text in &inputs {
        match parse_formula_with(text, ParseOptions::any_agents()) {
            Ok(f) => {
                println!("input      {text}");
                println!("canonical  {}", print_formula(&f));
                println!("primitive  {}", print_formula(&f.normalize()));
                println!("modal depth {}, {} nodes\n", f.modal_depth(), f.node_count());
            }
            Err(e) => println!("input      {text}\nerror      {e}\n"),
        }
    }
}
