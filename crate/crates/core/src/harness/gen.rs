//! Random finite models that satisfy every constraint by construction.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{
    validate, ActEntry, ChoiceEntry, EvidenceEntry, EvidenceSet, FiniteJstitModel, ModelDescription,
    ModelError, RelationBase, RelationSpec, ValuationEntry, ValuationPoints,
};
use crate::proofkit::ConstantSpecification;
use crate::syntax::{AgentSet, Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EvidenceMode {
    /// `E(m, t)` is every formula.
    #[default]
    Everything,
    /// Finite evidence over a small formula base, grown along the order and
    /// closed under the term operations on one level of compound terms.
    SparseClosed,
}

#[derive(Clone, Debug)]
pub struct GenParams {
    pub seed: u64,
    /// Moments on the longest chain; 1 gives a single moment.
    pub max_depth: usize,
    pub max_branching: usize,
    pub agents: AgentSet,
    pub term_pool: Vec<Term>,
    pub atom_pool: Vec<String>,
    pub evidence_mode: EvidenceMode,
    /// Random extra `R_e` pairs to try; a pair is kept only if the model
    /// stays valid.
    pub extra_epistemic_pairs: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 0,
            max_depth: 3,
            max_branching: 3,
            agents: AgentSet::new(["i", "j"]).expect("valid agents"),
            term_pool: ["x", "y", "z"].into_iter().map(Term::var).collect(),
            atom_pool: vec!["p".into(), "q".into()],
            evidence_mode: EvidenceMode::Everything,
            extra_epistemic_pairs: 0,
        }
    }
}

impl GenParams {
    pub fn with_seed(seed: u64) -> Self {
        GenParams { seed, ..Self::default() }
    }

    fn check(&self) -> Result<(), GenError> {
        if self.max_depth == 0 {
            return Err(GenError::Infeasible("depth must be at least 1".into()));
        }
        if self.max_depth > 1 && self.max_branching == 0 {
            return Err(GenError::Infeasible("branching must be at least 1 when depth exceeds 1".into()));
        }
        if self.term_pool.is_empty() || self.atom_pool.is_empty() {
            return Err(GenError::Infeasible("term and atom pools must be non-empty".into()));
        }
        if self.agents.is_empty() {
            return Err(GenError::Infeasible("at least one agent is required".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("constant specification: {0}")]
    Cs(String),
    #[error("generated description does not build: {0}")]
    Model(#[from] ModelError),
    #[error("generated model violates {0}")]
    Invalid(String),
}

/// The rooted tree skeleton; moment `k` is named `m{k}` and children come
/// after their parents.
struct Tree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    /// Leaves above (or equal to) each moment, in index order.
    under: Vec<Vec<usize>>,
}

impl Tree {
    fn grow(rng: &mut ChaCha8Rng, depth: usize, branching: usize) -> Tree {
        let mut parent = vec![None];
        let mut level = vec![1usize];
        let mut children: Vec<Vec<usize>> = vec![vec![]];
        let mut k = 0;
        while k < parent.len() {
            if level[k] < depth {
                let lo = usize::from(k == 0);
                let n = rng.gen_range(lo..=branching);
                for _ in 0..n {
                    let c = parent.len();
                    parent.push(Some(k));
                    level.push(level[k] + 1);
                    children.push(vec![]);
                    children[k].push(c);
                }
            }
            k += 1;
        }
        let mut under: Vec<Vec<usize>> = vec![vec![]; parent.len()];
        for m in (0..parent.len()).rev() {
            if children[m].is_empty() {
                under[m].push(m);
            }
            under[m].sort_unstable();
            if let Some(p) = parent[m] {
                let mine = under[m].clone();
                under[p].extend(mine);
            }
        }
        Tree { parent, children, under }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    /// The `≈_m` classes: one per child, or the single history of a leaf.
    fn classes(&self, m: usize) -> Vec<Vec<usize>> {
        if self.children[m].is_empty() {
            vec![vec![m]]
        } else {
            self.children[m].iter().map(|&c| self.under[c].clone()).collect()
        }
    }

    fn below(&self, m: usize) -> Vec<usize> {
        let mut out = vec![];
        let mut cur = self.parent[m];
        while let Some(p) = cur {
            out.push(p);
            cur = self.parent[p];
        }
        out
    }
}

fn name(k: usize) -> String {
    format!("m{k}")
}

/// Per agent, a coarsening of `classes` such that every selection of one
/// block per agent meets: classes are laid out on a grid with one axis per
/// agent, and the first `∏ b_j` classes fill the grid completely.
fn independent_choices(rng: &mut ChaCha8Rng, classes: &[Vec<usize>], agents: usize) -> Vec<Vec<Vec<usize>>> {
    let k = classes.len();
    let mut order: Vec<usize> = (0..agents).collect();
    order.shuffle(rng);
    let mut sizes = vec![1usize; agents];
    let mut product = 1;
    for &j in &order {
        let room = k / product;
        sizes[j] = rng.gen_range(1..=room.max(1));
        product *= sizes[j];
    }
    let mut layout: Vec<usize> = (0..k).collect();
    layout.shuffle(rng);
    let mut coords = vec![vec![0usize; agents]; k];
    for (slot, &class) in layout.iter().enumerate() {
        if slot < product {
            let mut rest = slot;
            for j in 0..agents {
                coords[class][j] = rest % sizes[j];
                rest /= sizes[j];
            }
        } else {
            for j in 0..agents {
                coords[class][j] = rng.gen_range(0..sizes[j]);
            }
        }
    }
    (0..agents)
        .map(|j| {
            let mut blocks = vec![vec![]; sizes[j]];
            for (c, class) in classes.iter().enumerate() {
                blocks[coords[c][j]].extend(class.iter().copied());
            }
            for b in &mut blocks {
                b.sort_unstable();
            }
            blocks
        })
        .collect()
}

/// Formulas the sparse evidence function draws from: atoms, their
/// negations and implications between atoms.
pub fn evidence_base(atoms: &[String]) -> Vec<Formula> {
    let mut out: Vec<Formula> = atoms.iter().map(|a| Formula::atom(a.as_str())).collect();
    for a in atoms {
        out.push(Formula::not(Formula::atom(a.as_str())));
    }
    for a in atoms {
        for b in atoms {
            out.push(Formula::imp(Formula::atom(a.as_str()), Formula::atom(b.as_str())));
        }
    }
    out
}

/// Terms whose evidence is listed in sparse mode: the pool plus one level of
/// `*`, `+` and `!` over it.
pub fn evidence_universe(pool: &[Term]) -> Vec<Term> {
    let mut u: Vec<Term> = pool.to_vec();
    for s in pool {
        for t in pool {
            u.push(Term::app(s.clone(), t.clone()));
            u.push(Term::sum(s.clone(), t.clone()));
        }
    }
    u.extend(pool.iter().map(|t| Term::check(t.clone())));
    u
}

fn sparse_evidence(
    rng: &mut ChaCha8Rng,
    tree: &Tree,
    pool: &[Term],
    atoms: &[String],
) -> Vec<EvidenceEntry> {
    let base = evidence_base(atoms);
    let mut e0: Vec<BTreeMap<Term, BTreeSet<Formula>>> = Vec::with_capacity(tree.len());
    for m in 0..tree.len() {
        let mut here = BTreeMap::new();
        for t in pool {
            let mut set = match tree.parent[m] {
                Some(p) => e0[p].get(t).cloned().unwrap_or_default(),
                None => BTreeSet::new(),
            };
            for f in &base {
                if rng.gen_bool(0.25) {
                    set.insert(f.clone());
                }
            }
            here.insert(t.clone(), set);
        }
        e0.push(here);
    }
    let mut out = Vec::new();
    for (m, here) in e0.iter().enumerate() {
        let mut full: BTreeMap<Term, BTreeSet<Formula>> = here.clone();
        for s in pool {
            for t in pool {
                let mut app = BTreeSet::new();
                for f in &here[s] {
                    if let Formula::Imp(a, b) = f {
                        if here[t].contains(a) {
                            app.insert((**b).clone());
                        }
                    }
                }
                full.insert(Term::app(s.clone(), t.clone()), app);
                let sum: BTreeSet<Formula> = here[s].union(&here[t]).cloned().collect();
                full.insert(Term::sum(s.clone(), t.clone()), sum);
            }
            let checked = here[s].iter().map(|a| Formula::just(s.clone(), a.clone())).collect();
            full.insert(Term::check(s.clone()), checked);
        }
        for t in evidence_universe(pool) {
            let set = &full[&t];
            if !set.is_empty() {
                out.push(EvidenceEntry {
                    moment: Some(name(m)),
                    term: Some(t),
                    set: EvidenceSet::Finite(set.clone()),
                });
            }
        }
    }
    out
}

/// A model satisfying every constraint, deterministic in the parameters.
pub fn gen_model(p: &GenParams) -> Result<FiniteJstitModel, GenError> {
    gen_cs_normal_model(p, &ConstantSpecification::empty())
}

/// The description [`gen_model`] builds, before validation.
pub fn gen_description(p: &GenParams, cs: &ConstantSpecification) -> Result<ModelDescription, GenError> {
    p.check()?;
    cs.validate(&p.agents).map_err(|e| GenError::Cs(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let tree = Tree::grow(&mut rng, p.max_depth, p.max_branching);
    let agent_names: Vec<String> = p.agents.iter().map(|a| a.0.clone()).collect();
    let mut d = ModelDescription::new(agent_names.clone());
    d.moments = (0..tree.len()).map(name).collect();
    for m in 0..tree.len() {
        for &c in &tree.children[m] {
            d.order.push((name(m), name(c)));
        }
    }

    let mut act: Vec<BTreeMap<usize, BTreeSet<Term>>> = Vec::with_capacity(tree.len());
    for m in 0..tree.len() {
        let classes = tree.classes(m);
        if classes.len() > 1 {
            let blocks = independent_choices(&mut rng, &classes, agent_names.len());
            for (j, b) in blocks.into_iter().enumerate() {
                if b.len() > 1 {
                    d.choice.push(ChoiceEntry {
                        moment: name(m),
                        agent: agent_names[j].clone(),
                        blocks: b.iter().map(|blk| blk.iter().map(|&l| name(l)).collect()).collect(),
                    });
                }
            }
        }
        let mut here: BTreeMap<usize, BTreeSet<Term>> = tree.under[m]
            .iter()
            .map(|&l| (l, tree.parent[m].map(|q| act[q][&l].clone()).unwrap_or_default()))
            .collect();
        if classes.len() > 1 && rng.gen_bool(0.7) {
            let fresh = rng.gen_range(1..=2.min(p.term_pool.len()));
            for t in p.term_pool.choose_multiple(&mut rng, fresh) {
                // A non-empty proper subset of the classes.
                let mask = rng.gen_range(1..(1u64 << classes.len().min(63)) - 1);
                for (c, class) in classes.iter().enumerate() {
                    if mask >> c & 1 == 1 {
                        for l in class {
                            here.get_mut(l).expect("leaf above m").insert(t.clone());
                        }
                    }
                }
            }
        }
        for (l, terms) in &here {
            if !terms.is_empty() {
                d.act.push(ActEntry { moment: name(m), leaf: name(*l), terms: terms.iter().cloned().collect() });
            }
        }
        act.push(here);
    }

    d.evidence = match p.evidence_mode {
        EvidenceMode::Everything => {
            vec![EvidenceEntry { moment: None, term: None, set: EvidenceSet::Everything }]
        }
        EvidenceMode::SparseClosed => {
            let mut ev = sparse_evidence(&mut rng, &tree, &p.term_pool, &p.atom_pool);
            let mut by_const: BTreeMap<Term, BTreeSet<Formula>> = BTreeMap::new();
            for (c, a) in cs.assertions() {
                by_const.entry(c).or_default().insert(a);
            }
            for (c, set) in by_const {
                ev.push(EvidenceEntry { moment: None, term: Some(c), set: EvidenceSet::Finite(set) });
            }
            ev
        }
    };

    for atom in &p.atom_pool {
        let mut pts = Vec::new();
        for m in 0..tree.len() {
            for &l in &tree.under[m] {
                if rng.gen_bool(0.5) {
                    pts.push((name(m), name(l)));
                }
            }
        }
        d.valuation.push(ValuationEntry { atom: atom.clone(), points: ValuationPoints::Pairs(pts) });
    }

    let mut extra = Vec::new();
    for _ in 0..p.extra_epistemic_pairs {
        let a = rng.gen_range(0..tree.len());
        let b = rng.gen_range(0..tree.len());
        if a == b || tree.below(b).contains(&a) {
            continue;
        }
        extra.push((name(a), name(b)));
        d.re = Some(RelationSpec { base: RelationBase::R, pairs: extra.clone() });
        let keep = validate(&d.build()?).is_clean();
        if !keep {
            extra.pop();
            d.re = (!extra.is_empty()).then(|| RelationSpec { base: RelationBase::R, pairs: extra.clone() });
        }
    }
    Ok(d)
}

/// Like [`gen_model`], with the evidence of every constant `c` containing
/// each `A` such that `c:A ∈ cs`.
pub fn gen_cs_normal_model(p: &GenParams, cs: &ConstantSpecification) -> Result<FiniteJstitModel, GenError> {
    let model = gen_description(p, cs)?.build()?;
    let report = validate(&model);
    if !report.is_clean() {
        let names: Vec<String> = report.constraints().iter().map(|c| c.to_string()).collect();
        return Err(GenError::Invalid(names.join(", ")));
    }
    Ok(model)
}

/// Every moment's evidence for `c` contains `A` whenever `c:A ∈ cs`.
pub fn is_cs_normal(model: &FiniteJstitModel, cs: &ConstantSpecification) -> bool {
    cs.assertions()
        .iter()
        .all(|(c, a)| model.moments().all(|m| model.evidence().contains(m, c, a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_one_is_a_single_moment() {
        let m = gen_model(&GenParams { seed: 1, max_depth: 1, ..GenParams::default() }).unwrap();
        assert_eq!(m.moment_count(), 1);
        assert_eq!(m.history_count(), 1);
    }

    #[test]
    fn same_seed_same_model() {
        let p = GenParams { seed: 17, evidence_mode: EvidenceMode::SparseClosed, ..GenParams::default() };
        assert_eq!(gen_model(&p).unwrap().to_string(), gen_model(&p).unwrap().to_string());
    }

    #[test]
    fn sweep_validates_clean() {
        for seed in 1..=200 {
            for mode in [EvidenceMode::Everything, EvidenceMode::SparseClosed] {
                let p = GenParams { seed, evidence_mode: mode, extra_epistemic_pairs: 2, ..GenParams::default() };
                if let Err(e) = gen_model(&p) {
                    panic!("seed {seed} {mode:?}: {e}");
                }
            }
        }
    }

    #[test]
    fn zero_depth_is_rejected() {
        let p = GenParams { max_depth: 0, ..GenParams::default() };
        assert!(matches!(gen_model(&p), Err(GenError::Infeasible(_))));
    }

    #[test]
    fn constants_are_normal() {
        let agents = AgentSet::new(["i", "j"]).unwrap();
        let cs = ConstantSpecification::parse("c1:(p -> (q -> p))\n", &agents).unwrap();
        let p = GenParams { seed: 5, evidence_mode: EvidenceMode::SparseClosed, ..GenParams::default() };
        let m = gen_cs_normal_model(&p, &cs).unwrap();
        assert!(is_cs_normal(&m, &cs));
        assert!(!is_cs_normal(&gen_model(&p).unwrap(), &cs));
    }
}
