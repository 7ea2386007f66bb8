//! Scripted single-constraint breakages of generated models.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{
    validate, ActEntry, ChoiceEntry, Constraint, EvidenceEntry, EvidenceSet, FiniteJstitModel, HistoryId,
    ModelDescription, MomentId, RelationBase, RelationSpec,
};
use crate::syntax::{Formula, Term};

use super::gen::{gen_model, EvidenceMode, GenParams};

/// The eleven model constraints the mutation suite targets (`R ⊆ R_e` is a
/// structural side condition and is left out).
pub const MUTATION_TARGETS: [Constraint; 11] = [
    Constraint::HistoricalConnection,
    Constraint::NoBackwardBranching,
    Constraint::NoChoiceBetweenUndividedHistories,
    Constraint::IndependenceOfAgents,
    Constraint::MonotonicityOfEvidence,
    Constraint::EvidenceClosure,
    Constraint::ExpansionOfPresentedProofs,
    Constraint::NoNewProofsGuaranteed,
    Constraint::NewProofMakesHistoriesDivide,
    Constraint::FutureAlwaysMatters,
    Constraint::EpistemicTransparency,
];

fn fresh_name(d: &ModelDescription, stem: &str) -> String {
    (0..).map(|k| format!("{stem}{k}")).find(|n| !d.moments.contains(n)).expect("unbounded")
}

fn fresh_term(model: &FiniteJstitModel) -> Term {
    let used: BTreeSet<Term> = model.act_terms().into_iter().chain(model.evidence().keyed_terms()).collect();
    (0..).map(|k| Term::var(format!("w{k}"))).find(|t| !used.contains(t)).expect("unbounded")
}

fn root(model: &FiniteJstitModel) -> MomentId {
    model.moments().find(|&m| model.moments().all(|a| !model.lt(a, m))).expect("a minimal moment")
}

fn children(model: &FiniteJstitModel, m: MomentId) -> Vec<MomentId> {
    model
        .moments()
        .filter(|&c| model.lt(m, c) && !model.moments().any(|x| model.lt(m, x) && model.lt(x, c)))
        .collect()
}

/// `≈_m` classes of `H_m`, by leaf name.
fn classes(model: &FiniteJstitModel, m: MomentId) -> Vec<Vec<String>> {
    let kids = children(model, m);
    if kids.is_empty() {
        return model.histories_through(m).iter().map(|&h| vec![model.history_name(h).to_string()]).collect();
    }
    kids.iter()
        .map(|&c| model.histories_through(c).iter().map(|&h| model.history_name(h).to_string()).collect())
        .collect()
}

fn name(model: &FiniteJstitModel, m: MomentId) -> String {
    model.moment_name(m).to_string()
}

fn set_act(d: &mut ModelDescription, moment: &str, leaf: &str, terms: BTreeSet<Term>) {
    d.act.retain(|e| !(e.moment == moment && e.leaf == leaf));
    if !terms.is_empty() {
        d.act.push(ActEntry { moment: moment.into(), leaf: leaf.into(), terms: terms.into_iter().collect() });
    }
}

fn add_act(d: &mut ModelDescription, model: &FiniteJstitModel, m: MomentId, h: HistoryId, t: &Term) {
    let mut terms = model.act(m, h).clone();
    terms.insert(t.clone());
    set_act(d, model.moment_name(m), model.history_name(h), terms);
}

/// Candidate descriptions that should violate exactly `target`, in random
/// order. Empty when the model has no suitable spot.
pub fn mutate(model: &FiniteJstitModel, target: Constraint, rng: &mut ChaCha8Rng) -> Vec<ModelDescription> {
    let base = model.describe();
    let mut out = Vec::new();
    let r = root(model);
    match target {
        Constraint::HistoricalConnection => {
            let mut d = base.clone();
            let orphan = fresh_name(&d, "orphan");
            d.moments.push(orphan);
            out.push(d);
        }
        Constraint::NoBackwardBranching => {
            for m in model.moments() {
                if model.moments().filter(|&a| model.lt(a, m)).count() < 2 {
                    continue;
                }
                let mut d = base.clone();
                let side = fresh_name(&d, "side");
                d.moments.push(side.clone());
                d.order.push((name(model, r), side.clone()));
                d.order.push((side.clone(), name(model, m)));
                let copied: Vec<EvidenceEntry> = d
                    .evidence
                    .iter()
                    .filter(|e| e.moment.as_deref() == Some(model.moment_name(r)))
                    .map(|e| EvidenceEntry { moment: Some(side.clone()), ..e.clone() })
                    .collect();
                d.evidence.extend(copied);
                out.push(d);
            }
        }
        Constraint::NoChoiceBetweenUndividedHistories => {
            for m in model.moments() {
                let cls = classes(model, m);
                for (ci, c) in cls.iter().enumerate() {
                    if c.len() < 2 {
                        continue;
                    }
                    let mut d = base.clone();
                    let mn = name(model, m);
                    d.choice.retain(|e| e.moment != mn);
                    let rest: Vec<String> =
                        cls.iter().enumerate().filter(|&(k, _)| k != ci).flat_map(|(_, x)| x.clone()).collect();
                    let mut blocks = vec![vec![c[0].clone()], c[1..].to_vec()];
                    if !rest.is_empty() {
                        blocks.push(rest);
                    }
                    d.choice.push(ChoiceEntry { moment: mn, agent: model.agents().get(0).0.clone(), blocks });
                    out.push(d);
                }
            }
        }
        Constraint::IndependenceOfAgents if model.agents().len() >= 2 => {
            for m in model.moments() {
                let cls = classes(model, m);
                if cls.len() < 2 {
                    continue;
                }
                let mut d = base.clone();
                let mn = name(model, m);
                d.choice.retain(|e| e.moment != mn);
                let first = cls[0].clone();
                let rest: Vec<String> = cls[1..].iter().flatten().cloned().collect();
                for (k, agent) in model.agents().iter().take(2).enumerate() {
                    let blocks = if k == 0 { vec![first.clone(), rest.clone()] } else { vec![rest.clone(), first.clone()] };
                    d.choice.push(ChoiceEntry { moment: mn.clone(), agent: agent.0.clone(), blocks });
                }
                out.push(d);
            }
        }
        Constraint::MonotonicityOfEvidence if model.moment_count() >= 2 => {
            let mut d = base.clone();
            d.evidence =
                vec![EvidenceEntry { moment: Some(name(model, r)), term: None, set: EvidenceSet::Everything }];
            out.push(d);
            // Sparse models: drop an inherited formula at a later moment.
            for e in base.evidence.iter() {
                let (Some(mn), Some(t @ Term::Var(_)), EvidenceSet::Finite(set)) = (&e.moment, &e.term, &e.set)
                else {
                    continue;
                };
                let m = model.moment_id(mn).expect("described moment");
                let Some(&p) = model.moments().filter(|&a| model.lt(a, m)).collect::<Vec<_>>().last() else {
                    continue;
                };
                let below = model.evidence().get(p, t);
                for f in set.iter().filter(|f| below.contains(f)) {
                    let mut d = base.clone();
                    for x in d.evidence.iter_mut() {
                        if x.moment.as_deref() == Some(mn.as_str()) && x.term.as_ref() == Some(t) {
                            let mut s = set.clone();
                            s.remove(f);
                            x.set = EvidenceSet::Finite(s);
                        }
                    }
                    out.push(d);
                }
            }
        }
        Constraint::EvidenceClosure => {
            let (x, y) = (Term::var("x"), Term::var("y"));
            let mut d = base.clone();
            d.evidence = vec![
                EvidenceEntry {
                    moment: None,
                    term: Some(x.clone()),
                    set: EvidenceSet::from_formulas([Formula::atom("p")]),
                },
                EvidenceEntry {
                    moment: None,
                    term: Some(Term::sum(x, y)),
                    set: EvidenceSet::from_formulas([Formula::atom("q")]),
                },
            ];
            out.push(d);
        }
        Constraint::ExpansionOfPresentedProofs => {
            for &leaf in model.leaves() {
                let h = model.history_of_leaf(leaf).expect("leaf");
                for t in model.act(leaf, h) {
                    let mut terms = model.act(leaf, h).clone();
                    terms.remove(t);
                    let mut d = base.clone();
                    set_act(&mut d, model.moment_name(leaf), model.history_name(h), terms);
                    out.push(d);
                }
            }
        }
        Constraint::NoNewProofsGuaranteed => {
            let w = fresh_term(model);
            let mut d = base.clone();
            for &(m, h) in model.pairs() {
                add_act(&mut d, model, m, h, &w);
            }
            out.push(d);
        }
        Constraint::NewProofMakesHistoriesDivide => {
            let w = fresh_term(model);
            for m in model.moments() {
                for c in classes(model, m) {
                    if c.len() < 2 {
                        continue;
                    }
                    let leaf = model.moment_id(&c[0]).expect("leaf name");
                    let h = model.history_of_leaf(leaf).expect("leaf");
                    let mut d = base.clone();
                    for later in model.moments().filter(|&x| model.le(m, x) && model.passes_through(h, x)) {
                        add_act(&mut d, model, later, h, &w);
                    }
                    out.push(d);
                }
            }
        }
        Constraint::FutureAlwaysMatters => {
            let covering: Vec<(String, String)> = model
                .moments()
                .flat_map(|m| children(model, m).into_iter().map(move |c| (m, c)))
                .map(|(a, b)| (name(model, a), name(model, b)))
                .collect();
            for k in 0..covering.len() {
                let mut d = base.clone();
                let mut pairs = covering.clone();
                pairs.remove(k);
                d.r = RelationSpec { base: RelationBase::Identity, pairs };
                d.re = None;
                out.push(d);
            }
        }
        Constraint::EpistemicTransparency => {
            for a in model.moments() {
                for b in model.moments() {
                    if model.r_e(a, b) || model.act_moment(a).is_subset(model.act_moment(b)) {
                        continue;
                    }
                    let mut d = base.clone();
                    d.evidence = vec![EvidenceEntry { moment: None, term: None, set: EvidenceSet::Everything }];
                    let mut pairs = d.re.take().map(|s| s.pairs).unwrap_or_default();
                    pairs.push((name(model, a), name(model, b)));
                    d.re = Some(RelationSpec { base: RelationBase::R, pairs });
                    out.push(d);
                }
            }
        }
        _ => {}
    }
    out.shuffle(rng);
    out
}

#[derive(Clone, Debug)]
pub struct MutationOutcome {
    pub target: Constraint,
    /// Seed of the generated model that was mutated.
    pub seed: Option<u64>,
    /// Constraints the validator named for the mutated model.
    pub reported: BTreeSet<Constraint>,
    pub model_text: Option<String>,
}

impl MutationOutcome {
    pub fn exact(&self) -> bool {
        self.reported.len() == 1 && self.reported.contains(&self.target)
    }
}

impl fmt::Display for MutationOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.reported.iter().map(|c| c.slug()).collect();
        match self.seed {
            Some(s) => write!(
                f,
                "{} {}: seed {s}, reported [{}]",
                if self.exact() { "exact" } else { "INEXACT" },
                self.target,
                names.join(", ")
            ),
            None => write!(f, "MISSING {}: no mutation applied", self.target),
        }
    }
}

/// Searches generated models from `seed` on for a mutation that the
/// validator reports as exactly `target`. Falls back to the last inexact
/// attempt when none is exact within `attempts` models.
pub fn scripted_mutation(target: Constraint, seed: u64, attempts: usize) -> MutationOutcome {
    let mut fallback = MutationOutcome { target, seed: None, reported: BTreeSet::new(), model_text: None };
    for s in seed..seed + attempts as u64 {
        let mode = if s % 2 == 0 { EvidenceMode::Everything } else { EvidenceMode::SparseClosed };
        let params = GenParams { seed: s, evidence_mode: mode, ..GenParams::default() };
        let Ok(model) = gen_model(&params) else { continue };
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        for d in mutate(&model, target, &mut rng) {
            let Ok(mutated) = d.build() else { continue };
            let reported = validate(&mutated).constraints();
            let outcome = MutationOutcome { target, seed: Some(s), reported, model_text: Some(mutated.to_string()) };
            if outcome.exact() {
                return outcome;
            }
            fallback = outcome;
        }
    }
    fallback
}

/// One scripted mutation per constraint.
pub fn mutation_suite(seed: u64) -> Vec<MutationOutcome> {
    MUTATION_TARGETS.iter().map(|&c| scripted_mutation(c, seed, 50)).collect()
}

/// Mutation outcomes keyed by constraint slug.
pub fn mutation_summary(outcomes: &[MutationOutcome]) -> BTreeMap<&'static str, bool> {
    outcomes.iter().map(|o| (o.target.slug(), o.exact())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_constraint_has_an_exact_mutation() {
        for o in mutation_suite(1) {
            assert!(o.exact(), "{o}");
        }
    }
}
