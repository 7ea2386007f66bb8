//! Loads a model file and prints its structure and the constraint report.
//!
//! cargo run --example check_model -- data/two_agents.model

use jstit::model::{load_model, validate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "data/two_agents.model".into());
    let model = load_model(&std::fs::read_to_string(&path)?)?;
    println!("{path}: {} moments, {} histories, agents {}", model.moment_count(), model.history_count(), model.agents());
    for m in model.moments() {
        let hs: Vec<&str> = model.histories_through(m).iter().map(|&h| model.history_name(h)).collect();
        let act: Vec<String> = model.act_moment(m).iter().map(|t| t.to_string()).collect();
        println!("  {:<6} H = {{{}}}  Act = {{{}}}", model.moment_name(m), hs.join(" "), act.join(", "));
    }
    print!("{}", validate(&model));
    Ok(())
}
