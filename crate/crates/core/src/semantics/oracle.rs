//! Naive evaluator: each clause is evaluated by direct recursion, with the
//! `Act` aggregates recomputed from the raw `Act` function every time.

use std::collections::BTreeSet;

use crate::model::{FiniteJstitModel, HistoryId, MomentId};
use crate::syntax::{Formula, Term};

fn intersection(model: &FiniteJstitModel, m: MomentId, hs: &[HistoryId]) -> BTreeSet<Term> {
    let mut it = hs.iter();
    let Some(&first) = it.next() else { return BTreeSet::new() };
    let mut acc = model.act(m, first).clone();
    for &h in it {
        acc.retain(|t| model.act(m, h).contains(t));
    }
    acc
}

fn act_m(model: &FiniteJstitModel, m: MomentId) -> BTreeSet<Term> {
    intersection(model, m, model.histories_through(m))
}

fn act_mhj(model: &FiniteJstitModel, m: MomentId, h: HistoryId, j: usize) -> BTreeSet<Term> {
    let cell: Vec<HistoryId> = model
        .choice_blocks(m, j)
        .iter()
        .find(|b| b.contains(&h))
        .expect("choice covers H_m")
        .clone();
    intersection(model, m, &cell)
}

fn everywhere_from(
    model: &FiniteJstitModel,
    m: MomentId,
    related: impl Fn(MomentId, MomentId) -> bool,
    a: &Formula,
) -> bool {
    model.moments().filter(|&m2| related(m, m2)).all(|m2| {
        model.histories().filter(|&h2| model.passes_through(h2, m2)).all(|h2| holds(model, m2, h2, a))
    })
}

fn justified(model: &FiniteJstitModel, m: MomentId, t: &Term, a: &Formula) -> bool {
    model.evidence().get(m, t).contains(a) && everywhere_from(model, m, |x, y| model.r_e(x, y), a)
}

/// `M, m, h ⊨ f`, assuming `h` passes through `m` and every agent of `f`
/// belongs to the model.
pub fn holds(model: &FiniteJstitModel, m: MomentId, h: HistoryId, f: &Formula) -> bool {
    let through = || model.histories().filter(move |&g| model.passes_through(g, m));
    let agent = |j| model.agent_index(j).expect("agent of the model");
    match f {
        Formula::Atom(p) => model.holds_atom(p, m, h),
        Formula::Falsum => false,
        Formula::Neg(a) => !holds(model, m, h, a),
        Formula::And(a, b) => holds(model, m, h, a) && holds(model, m, h, b),
        Formula::Or(a, b) => holds(model, m, h, a) || holds(model, m, h, b),
        Formula::Imp(a, b) => !holds(model, m, h, a) || holds(model, m, h, b),
        Formula::Nec(a) => through().all(|g| holds(model, m, g, a)),
        Formula::Poss(a) => through().any(|g| holds(model, m, g, a)),
        Formula::Cstit(j, a) => {
            let j = agent(j);
            through()
                .filter(|&g| model.choice_blocks(m, j).iter().any(|b| b.contains(&h) && b.contains(&g)))
                .all(|g| holds(model, m, g, a))
        }
        Formula::CstitDual(j, a) => !holds(model, m, h, &Formula::cstit(j.clone(), Formula::not((**a).clone()))),
        Formula::Know(a) => everywhere_from(model, m, |x, y| model.r(x, y), a),
        Formula::Just(t, a) => justified(model, m, t, a),
        Formula::Prove(j, t, a) => {
            act_mhj(model, m, h, agent(j)).contains(t) && !act_m(model, m).contains(t) && justified(model, m, t, a)
        }
        Formula::Proven(t, a) => act_m(model, m).contains(t) && justified(model, m, t, a),
        Formula::Et(t) => model.act(m, h).contains(t),
    }
}
