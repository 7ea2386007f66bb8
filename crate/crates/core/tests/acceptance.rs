//! End-to-end acceptance run. Built without the libtest harness so that the
//! one-line verdict per criterion is always printed.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jstit::cli;
use jstit::harness::{
    fmp_demo, gen_model, mutation_suite, prop1_agents, prop1_quotient, random_formula, sample_params,
    soundness_fuzz, EvidenceMode, GenParams, Pools, PROP1_ANTECEDENT, PROP1_WITNESS,
};
use jstit::model::{validate, Constraint};
use jstit::proofkit::{
    check_proof, corpus, corpus_agents, eliminate_s4, ConstantSpecification, Mode, SchemeId,
};
use jstit::semantics::{oracle, EvalOptions, Evaluator};
use jstit::syntax::{parse_formula, Agent, Formula, Term};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn soundness() -> Verdict {
    let start = Instant::now();
    let report = soundness_fuzz(200, 20, 1, &ConstantSpecification::empty());
    let elapsed = start.elapsed();
    ensure(report.skipped.is_empty(), || format!("{} models not generated", report.skipped.len()))?;
    for id in SchemeId::all() {
        let n = report.per_source.get(id.as_str()).copied().unwrap_or(0);
        ensure(n == 200 * 20, || format!("{id}: {n} instances checked"))?;
    }
    ensure(report.findings.is_empty(), || {
        format!("{} counterexamples, first: {}", report.findings.len(), report.findings[0])
    })?;
    ensure(elapsed.as_secs_f64() < 60.0, || format!("took {elapsed:.1?}"))?;
    Ok(format!(
        "200 models x 20 instances x {} schemes, {} checks in total, 0 counterexamples, {elapsed:.1?}",
        SchemeId::all().count(),
        report.checks
    ))
}

fn dense_time_countermodel() -> Verdict {
    let (model, a) = prop1_quotient();
    let (m, h) = model.resolve_pair("0", "mid").map_err(|e| e.to_string())?;
    let mut ev = Evaluator::new(&model, EvalOptions::waived()).map_err(|e| e.to_string())?;
    let agents = prop1_agents();
    let value = |ev: &mut Evaluator<'_>, f: &Formula| ev.eval(m, h, f).expect("formula fits");
    ensure(!value(&mut ev, &a), || "A holds at (0,h2)".into())?;
    let ante = parse_formula(PROP1_ANTECEDENT, &agents).expect("parses");
    ensure(value(&mut ev, &ante), || "antecedent fails at (0,h2)".into())?;
    let witness = parse_formula(PROP1_WITNESS, &agents).expect("parses");
    ensure(value(&mut ev, &witness), || "witness conjunction fails at (0,h2)".into())?;
    let report = validate(&model);
    ensure(report.violations.len() == 1, || format!("{} violations", report.violations.len()))?;
    let v = &report.violations[0];
    ensure(v.constraint == Constraint::NoNewProofsGuaranteed && v.moments == ["mid"], || v.headline())?;
    let out = cli::run(["jstit", "demo", "prop1"]);
    ensure(out.code == 0, || format!("demo prop1 exited {}", out.code))?;
    for line in ["A falsified at (0,h2)", "constraint violated: no-new-proofs-guaranteed @ mid"] {
        ensure(out.stdout.contains(line), || format!("demo output lacks '{line}'"))?;
    }
    Ok("A false, antecedent true, witness true at (0,h2); only violation no-new-proofs-guaranteed @ mid".into())
}

fn fmp_run() -> jstit::harness::FmpReport {
    fmp_demo(100, 1)
}

fn discrete_validity() -> Verdict {
    let r = fmp_run();
    ensure(r.prop1_false.is_empty(), || {
        let (s, m, l) = &r.prop1_false[0];
        format!("{} exceptions, first seed {s} at ({m},{l})", r.prop1_false.len())
    })?;
    Ok(format!("A true at all {} pairs of {} models", r.pairs, r.models))
}

fn fmp_failure() -> Verdict {
    let r = fmp_run();
    ensure(r.witness_true.is_empty(), || {
        let (s, m, l) = &r.witness_true[0];
        format!("{} exceptions, first seed {s} at ({m},{l})", r.witness_true.len())
    })?;
    Ok(format!("K(<>p & <>~p) false at all {} pairs of {} models", r.pairs, r.models))
}

fn proof_corpus() -> Verdict {
    let cs = ConstantSpecification::empty();
    let wanted = ["T0", "T1", "T2", "T3", "T4", "T5-n1", "T5-n2"];
    let entries: Vec<_> = corpus().into_iter().filter(|e| wanted.contains(&e.name)).collect();
    ensure(entries.len() == wanted.len(), || "corpus entries missing".into())?;
    let models: Vec<_> = (0..50u64)
        .map(|seed| {
            let mode = if seed % 2 == 0 { EvidenceMode::Everything } else { EvidenceMode::SparseClosed };
            gen_model(&GenParams { seed, agents: corpus_agents(), evidence_mode: mode, ..GenParams::default() })
                .expect("valid model")
        })
        .collect();
    for e in &entries {
        let concl = check_proof(&e.proof, &cs, Mode::Pi).map_err(|r| format!("{}: {r}", e.name))?;
        ensure(concl.normalize() == e.statement.normalize(), || format!("{}: proves {concl}", e.name))?;
        for (seed, model) in models.iter().enumerate() {
            let mut ev = Evaluator::new(model, EvalOptions::default()).map_err(|e| e.to_string())?;
            if let Some((m, h)) = ev.counterexample(&concl).map_err(|e| e.to_string())? {
                return Err(format!(
                    "{} fails on model {seed} at ({},{})",
                    e.name,
                    model.moment_name(m),
                    model.history_name(h)
                ));
            }
        }
    }
    Ok(format!("{} proofs accepted, conclusions valid on 50 models", entries.len()))
}

fn s4_elimination() -> Verdict {
    let cs = ConstantSpecification::empty();
    let mut n = 0;
    for e in corpus().into_iter().filter(|e| e.proof.s4_steps() > 0) {
        ensure(check_proof(&e.proof, &cs, Mode::PiPrime).is_err(), || {
            format!("{} passes without the S4 rule before rewriting", e.name)
        })?;
        let out = eliminate_s4(&e.proof, &cs).map_err(|r| format!("{}: {r}", e.name))?;
        ensure(out.s4_steps() == 0, || format!("{}: S4 steps remain", e.name))?;
        let concl = check_proof(&out, &cs, Mode::PiPrime).map_err(|r| format!("{}: {r}", e.name))?;
        ensure(Some(&concl) == e.proof.conclusion(), || format!("{}: conclusion changed", e.name))?;
        n += 1;
    }
    ensure(n >= 3, || format!("only {n} proofs use the S4 rule"))?;
    Ok(format!("{n} proofs rewritten and accepted with the S4 axiom, same conclusions"))
}

fn semantics_invariants() -> Verdict {
    let mut pairs_checked = 0usize;
    for k in 0..100 {
        let params = sample_params(1000, k);
        let model = gen_model(&params).map_err(|e| e.to_string())?;
        let mut ev = Evaluator::new(&model, EvalOptions::default().with_et()).map_err(|e| e.to_string())?;
        let mut pools = Pools::new(params.agents.clone(), params.term_pool.clone(), params.atom_pool.clone());
        pools.et = true;
        pools.max_modal_depth = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        for _ in 0..100 {
            let a = random_formula(&mut rng, &pools);
            let t: Term = pools.terms[pairs_checked % pools.terms.len()].clone();
            let j: Agent = pools.agents.get(pairs_checked % pools.agents.len()).clone();
            let et = Formula::Et(t.clone());
            let shapes = [
                Formula::nec(a.clone()),
                Formula::know(a.clone()),
                Formula::just(t.clone(), a.clone()),
                Formula::proven(t.clone(), a.clone()),
            ];
            let prove_def = Formula::and(
                Formula::cstit(j.clone(), et.clone()),
                Formula::and(Formula::poss(Formula::not(et.clone())), Formula::just(t.clone(), a.clone())),
            );
            let proven_def = Formula::and(Formula::nec(et), Formula::just(t.clone(), a.clone()));
            let prove = Formula::prove(j, t.clone(), a.clone());
            let proven = Formula::proven(t, a.clone());
            for &(m, h) in model.pairs() {
                let fast = ev.eval(m, h, &a).map_err(|e| e.to_string())?;
                ensure(fast == oracle::holds(&model, m, h, &a), || {
                    format!("seed {}: evaluators disagree on {a} at ({},{})", params.seed, model.moment_name(m), model.history_name(h))
                })?;
                let eq = |ev: &mut Evaluator<'_>, x: &Formula, y: &Formula| {
                    ev.eval(m, h, x).expect("fits") == ev.eval(m, h, y).expect("fits")
                };
                ensure(eq(&mut ev, &prove, &prove_def), || format!("seed {}: Prove definability fails for {a}", params.seed))?;
                ensure(eq(&mut ev, &proven, &proven_def), || format!("seed {}: Proven definability fails for {a}", params.seed))?;
                pairs_checked += 1;
            }
            for m in model.moments() {
                for s in &shapes {
                    ensure(ev.is_moment_determinate(m, s).expect("fits"), || {
                        format!("seed {}: {s} differs across histories at {}", params.seed, model.moment_name(m))
                    })?;
                }
            }
        }
    }
    Ok(format!("100 models x 100 formulas: oracle agreement, determinacy and definability at {pairs_checked} formula-pair checks"))
}

fn mutations() -> Verdict {
    let outcomes = mutation_suite(1);
    ensure(outcomes.len() == 11, || format!("{} constraints covered", outcomes.len()))?;
    let bad: Vec<String> = outcomes.iter().filter(|o| !o.exact()).map(|o| o.to_string()).collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("each of the 11 constraints triggered alone by its scripted mutation".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("soundness fuzz", soundness),
        ("dense-time countermodel", dense_time_countermodel),
        ("discrete-time validity", discrete_validity),
        ("finite model property failure", fmp_failure),
        ("proof corpus", proof_corpus),
        ("S4 rule elimination", s4_elimination),
        ("semantics invariants", semantics_invariants),
        ("validator mutation suite", mutations),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
