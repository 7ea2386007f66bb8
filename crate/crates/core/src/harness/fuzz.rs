//! Checking axiom instances, rule applications and corpus theorems against
//! generated models.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::model::{Constraint, FiniteJstitModel};
use crate::proofkit::{
    corpus, corpus_agents, instance, unproved_disjunction, unproven_disjunction, ConstantSpecification, SchemeId,
};
use crate::semantics::{EvalOptions, Evaluator};
use crate::syntax::{Formula, Term};

use super::demos::sample_params;
use super::gen::{evidence_base, gen_cs_normal_model, gen_description, GenParams};
use super::mutate::mutate;
use super::random::{random_formula, random_instance, Pools};

#[derive(Clone, Debug)]
pub struct FuzzOptions {
    pub n_models: usize,
    pub n_instances: usize,
    pub seed: u64,
    pub cs: ConstantSpecification,
    /// Schemes to instantiate; empty means all of them.
    pub schemes: Vec<SchemeId>,
    /// Also check rule applications, `cs` members and corpus conclusions.
    pub rules_and_corpus: bool,
    /// Inject a violation of this constraint into every model first.
    pub mutation: Option<Constraint>,
    /// Keep the model text of every counterexample.
    pub emit_models: bool,
}

impl FuzzOptions {
    pub fn new(n_models: usize, n_instances: usize, seed: u64) -> Self {
        FuzzOptions {
            n_models,
            n_instances,
            seed,
            cs: ConstantSpecification::empty(),
            schemes: vec![],
            rules_and_corpus: true,
            mutation: None,
            emit_models: false,
        }
    }
}

/// One falsified check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub model_seed: u64,
    /// Scheme id, `R1`, `R2`, `S4`, `RCS` or `corpus:NAME`.
    pub source: String,
    pub formula: Formula,
    pub moment: String,
    pub leaf: String,
    pub model_text: Option<String>,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "seed={} source={} at=({},{}) formula={}",
            self.model_seed, self.source, self.moment, self.leaf, self.formula
        )
    }
}

#[derive(Clone, Debug)]
pub struct FuzzReport {
    pub models: usize,
    pub checks: usize,
    /// Checks per source, for coverage.
    pub per_source: BTreeMap<String, usize>,
    pub findings: Vec<Finding>,
    pub mutation: Option<Constraint>,
    /// Models the generator could not produce, with the reason.
    pub skipped: Vec<(u64, String)>,
}

impl FuzzReport {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty() && self.skipped.is_empty()
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.mutation {
            writeln!(f, "mutation mode: every model violates {c}")?;
        }
        writeln!(
            f,
            "models: {}, checks: {}, counterexamples: {}",
            self.models,
            self.checks,
            self.findings.len()
        )?;
        for (seed, why) in &self.skipped {
            writeln!(f, "skipped seed={seed}: {why}")?;
        }
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        Ok(())
    }
}

/// Every scheme, rule and corpus theorem against `n_models` generated
/// `cs`-normal models, `n_instances` random instances per scheme.
pub fn soundness_fuzz(n_models: usize, n_instances: usize, seed: u64, cs: &ConstantSpecification) -> FuzzReport {
    fuzz(&FuzzOptions { cs: cs.clone(), ..FuzzOptions::new(n_models, n_instances, seed) })
}

struct ModelRun {
    checks: usize,
    per_source: BTreeMap<String, usize>,
    findings: Vec<Finding>,
    skipped: Option<(u64, String)>,
}

struct Checker<'m> {
    ev: Evaluator<'m>,
    seed: u64,
    emit: bool,
    run: ModelRun,
}

impl Checker<'_> {
    /// Records the check; returns whether `f` is valid in the model.
    fn check(&mut self, source: &str, f: &Formula) -> bool {
        self.run.checks += 1;
        *self.run.per_source.entry(source.to_string()).or_default() += 1;
        let witness = self.ev.counterexample(f).expect("formula fits the model");
        let Some((m, h)) = witness else { return true };
        let model = self.ev.model();
        self.run.findings.push(Finding {
            model_seed: self.seed,
            source: source.to_string(),
            formula: f.clone(),
            moment: model.moment_name(m).to_string(),
            leaf: model.history_name(h).to_string(),
            model_text: self.emit.then(|| model.to_string()),
        });
        false
    }
}

fn build(params: &GenParams, opts: &FuzzOptions) -> Result<FiniteJstitModel, String> {
    match opts.mutation {
        None => gen_cs_normal_model(params, &opts.cs).map_err(|e| e.to_string()),
        Some(c) => {
            let d = gen_description(params, &opts.cs).map_err(|e| e.to_string())?;
            let model = d.build().map_err(|e| e.to_string())?;
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            mutate(&model, c, &mut rng)
                .into_iter()
                .next()
                .ok_or_else(|| format!("no {c} mutation applies"))?
                .build()
                .map_err(|e| e.to_string())
        }
    }
}

fn fuzz_model(k: usize, opts: &FuzzOptions) -> ModelRun {
    let params = sample_params(opts.seed, k);
    let empty = ModelRun { checks: 0, per_source: BTreeMap::new(), findings: vec![], skipped: None };
    let model = match build(&params, opts) {
        Ok(m) => m,
        Err(why) => return ModelRun { skipped: Some((params.seed, why)), ..empty },
    };
    let eval_opts = if opts.mutation.is_some() { EvalOptions::waived() } else { EvalOptions::default() };
    let ev = Evaluator::new(&model, eval_opts).expect("generated models are valid");
    let mut c = Checker { ev, seed: params.seed, emit: opts.emit_models, run: empty };
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x5eed_f00d);
    let mut pools = Pools::new(params.agents.clone(), params.term_pool.clone(), params.atom_pool.clone());
    pools.favourites = evidence_base(&params.atom_pool);

    let schemes: Vec<SchemeId> =
        if opts.schemes.is_empty() { SchemeId::all().collect() } else { opts.schemes.clone() };
    let mut valid = Vec::new();
    for &id in &schemes {
        for _ in 0..opts.n_instances {
            let f = random_instance(&mut rng, id, &pools);
            if c.check(id.as_str(), &f) {
                valid.push(f);
            }
        }
    }
    if !opts.rules_and_corpus {
        return c.run;
    }

    for _ in 0..opts.n_instances {
        let Some(a) = valid.choose(&mut rng).cloned() else { break };
        // R2
        c.check("R2", &Formula::know(a.clone()));
        // R1 with the major premise A -> (B -> A)
        let b = random_formula(&mut rng, &pools);
        let major = instance("A0-1", &[a.clone(), b.clone()]);
        if c.check("R1-major", &major) {
            c.check("R1", &Formula::imp(b, a));
        }
        // S4, from a premise that holds in this model
        let n = rng.gen_range(1..=2);
        let pairs: Vec<(Term, Formula)> = (0..n)
            .map(|_| (pools.terms.choose(&mut rng).expect("pool").clone(), random_formula(&mut rng, &pools)))
            .collect();
        let d = unproven_disjunction(&pairs).expect("n >= 1");
        let ka = if rng.gen_bool(0.5) { Formula::know(d.clone()) } else { Formula::know(random_formula(&mut rng, &pools)) };
        let premise = Formula::imp(ka.clone(), d);
        let conclusion = Formula::imp(ka, unproved_disjunction(&params.agents, &pairs).expect("n >= 1"));
        if c.ev.counterexample(&premise).expect("fits").is_none() {
            c.check("S4", &conclusion);
        }
    }
    for f in opts.cs.iter() {
        if f.agents().iter().all(|a| params.agents.contains(a)) {
            c.check("RCS", f);
        }
    }
    if params.agents == corpus_agents() {
        for e in corpus() {
            c.check(&format!("corpus:{}", e.name), &e.statement);
        }
    }
    c.run
}

/// [`soundness_fuzz`] with every knob exposed. Models are fuzzed in
/// parallel; the report lists them in seed order.
pub fn fuzz(opts: &FuzzOptions) -> FuzzReport {
    let runs: Vec<ModelRun> = (0..opts.n_models).into_par_iter().map(|k| fuzz_model(k, opts)).collect();
    let mut report = FuzzReport {
        models: opts.n_models,
        checks: 0,
        per_source: BTreeMap::new(),
        findings: vec![],
        mutation: opts.mutation,
        skipped: vec![],
    };
    for run in runs {
        report.checks += run.checks;
        for (k, v) in run.per_source {
            *report.per_source.entry(k).or_default() += v;
        }
        report.findings.extend(run.findings);
        report.skipped.extend(run.skipped);
    }
    report
}
