use jstit::harness::{
    fmp_demo, fuzz, gen_cs_normal_model, gen_model, is_cs_normal, mutation_suite, scripted_mutation, EvidenceMode,
    FuzzOptions, GenParams, FMP_FORMULA, MUTATION_TARGETS, PROP1_FORMULA,
};
use jstit::model::validate;
use jstit::proofkit::ConstantSpecification;
use jstit::semantics::{EvalOptions, Evaluator};
use jstit::syntax::{parse_formula, AgentSet};

fn cs() -> ConstantSpecification {
    ConstantSpecification::parse(include_str!("../data/sample.cs"), &AgentSet::new(["j"]).unwrap()).unwrap()
}

#[test]
fn deeper_models_are_valid_and_discrete() {
    let mut pairs = 0;
    for seed in 0..40 {
        let params = GenParams {
            seed,
            max_depth: 4,
            max_branching: 3,
            extra_epistemic_pairs: 2,
            evidence_mode: if seed % 2 == 0 { EvidenceMode::Everything } else { EvidenceMode::SparseClosed },
            ..GenParams::default()
        };
        let model = gen_model(&params).unwrap();
        let report = validate(&model);
        assert!(report.is_clean(), "seed {seed}: {report}");
        let mut ev = Evaluator::new(&model, EvalOptions::default()).unwrap();
        let a = parse_formula(PROP1_FORMULA, model.agents()).unwrap();
        let w = parse_formula(FMP_FORMULA, model.agents()).unwrap();
        for &(m, h) in model.pairs() {
            assert!(ev.eval(m, h, &a).unwrap(), "seed {seed}");
            assert!(!ev.eval(m, h, &w).unwrap(), "seed {seed}");
        }
        pairs += model.pairs().len();
    }
    assert!(pairs > 400, "only {pairs} pairs");
}

#[test]
fn generation_is_deterministic() {
    for seed in [3, 17, 99] {
        let p = GenParams::with_seed(seed);
        assert_eq!(gen_model(&p).unwrap().to_text(), gen_model(&p).unwrap().to_text());
    }
    assert_ne!(gen_model(&GenParams::with_seed(1)).unwrap().to_text(), gen_model(&GenParams::with_seed(2)).unwrap().to_text());
}

#[test]
fn fuzz_reports_are_reproducible() {
    let opts = FuzzOptions::new(10, 5, 42);
    let a = fuzz(&opts);
    let b = fuzz(&opts);
    assert_eq!(a.to_string(), b.to_string());
    assert_eq!(a.checks, b.checks);
    assert!(a.is_clean(), "{a}");
}

#[test]
fn fuzzing_with_a_constant_specification() {
    let cs = cs();
    let model = gen_cs_normal_model(&GenParams { agents: AgentSet::new(["j"]).unwrap(), ..GenParams::with_seed(5) }, &cs)
        .unwrap();
    assert!(is_cs_normal(&model, &cs));

    let mut opts = FuzzOptions::new(12, 4, 8);
    opts.cs = cs;
    let report = fuzz(&opts);
    assert!(report.is_clean(), "{report}");
    assert!(report.per_source.get("RCS").copied().unwrap_or(0) > 0, "{:?}", report.per_source);
}

#[test]
fn mutation_mode_evaluates_broken_models() {
    for target in MUTATION_TARGETS {
        let mut opts = FuzzOptions::new(3, 3, 11);
        opts.mutation = Some(target);
        let report = fuzz(&opts);
        assert_eq!(report.mutation, Some(target));
        assert!(report.to_string().starts_with("mutation mode"), "{report}");
    }
}

#[test]
fn scripted_mutations_are_exact_across_seeds() {
    for seed in [2, 3, 4] {
        for o in mutation_suite(seed) {
            assert!(o.exact(), "{o}");
        }
    }
    let o = scripted_mutation(MUTATION_TARGETS[0], 9, 50);
    assert_eq!(o.target, MUTATION_TARGETS[0]);
    assert!(jstit::model::load_model(o.model_text.as_deref().unwrap()).is_ok());
}

#[test]
fn fmp_demo_on_another_seed() {
    let r = fmp_demo(30, 77);
    assert!(r.holds(), "{r}");
    assert!(r.pairs > 0);
}
