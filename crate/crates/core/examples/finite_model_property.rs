//! On generated finite models K(<>p & <>~p) is never true and the
//! dense-time formula never fails.
//!
//! cargo run --example finite_model_property -- [MODELS] [SEED]

use jstit::harness::fmp_demo;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let models = args.next().unwrap_or(100) as usize;
    let seed = args.next().unwrap_or(1);
    let report = fmp_demo(models, seed);
    println!("{report}");
    if !report.holds() {
        std::process::exit(1);
    }
}
