//! Fuzzes every axiom scheme, rule and corpus theorem against generated models.
//!
//! cargo run --release --example soundness_fuzz -- [MODELS] [INSTANCES] [SEED]

use jstit::harness::soundness_fuzz;
use jstit::proofkit::ConstantSpecification;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let models = args.first().copied().unwrap_or(200) as usize;
    let instances = args.get(1).copied().unwrap_or(20) as usize;
    let seed = args.get(2).copied().unwrap_or(1);

    let start = std::time::Instant::now();
    let report = soundness_fuzz(models, instances, seed, &ConstantSpecification::empty());
    print!("{report}");
    for (source, n) in &report.per_source {
        println!("  {source:<12} {n}");
    }
    println!("elapsed: {:.2?}", start.elapsed());
    if !report.is_clean() {
        std::process::exit(1);
    }
}
