//! Random formulas and random axiom instances over small pools.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::proofkit::{instance_with, nobody_proves_instance, s4_axiom_instance, SchemeId};
use crate::syntax::{AgentSet, Formula, Term};

#[derive(Clone, Debug)]
pub struct Pools {
    pub agents: AgentSet,
    pub terms: Vec<Term>,
    pub atoms: Vec<String>,
    /// Bound on nested modal operators.
    pub max_modal_depth: usize,
    /// Bound on connectives in one generated formula.
    pub max_size: usize,
    /// Allow the announcement atom `E t`.
    pub et: bool,
    /// Formulas occasionally used whole, e.g. ones listed as evidence.
    pub favourites: Vec<Formula>,
}

impl Pools {
    pub fn new(agents: AgentSet, terms: Vec<Term>, atoms: Vec<String>) -> Self {
        Pools { agents, terms, atoms, max_modal_depth: 2, max_size: 6, et: false, favourites: vec![] }
    }
}

fn leaf<R: Rng>(rng: &mut R, pools: &Pools) -> Formula {
    if !pools.favourites.is_empty() && rng.gen_bool(0.2) {
        return pools.favourites.choose(rng).expect("non-empty").clone();
    }
    match rng.gen_range(0..20) {
        0 => Formula::Falsum,
        1 if pools.et => Formula::Et(pools.terms.choose(rng).expect("non-empty pool").clone()),
        _ => Formula::atom(pools.atoms.choose(rng).expect("non-empty pool").as_str()),
    }
}

fn grow<R: Rng>(rng: &mut R, pools: &Pools, modal: usize, size: usize) -> Formula {
    if size == 0 {
        return leaf(rng, pools);
    }
    let ops = if modal > 0 { 13 } else { 4 };
    let agent = |rng: &mut R| pools.agents.as_slice().choose(rng).expect("non-empty").clone();
    let term = |rng: &mut R| pools.terms.choose(rng).expect("non-empty pool").clone();
    let unary = |rng: &mut R, m: usize| grow(rng, pools, m, size - 1);
    match rng.gen_range(0..ops) {
        0 => Formula::not(unary(rng, modal)),
        op @ 1..=3 => {
            let left = rng.gen_range(0..size);
            let a = grow(rng, pools, modal, left);
            let b = grow(rng, pools, modal, size - 1 - left);
            match op {
                1 => Formula::and(a, b),
                2 => Formula::or(a, b),
                _ => Formula::imp(a, b),
            }
        }
        4 => Formula::nec(unary(rng, modal - 1)),
        5 => Formula::poss(unary(rng, modal - 1)),
        6 => {
            let j = agent(rng);
            Formula::cstit(j, unary(rng, modal - 1))
        }
        7 => {
            let j = agent(rng);
            Formula::cstit_dual(j, unary(rng, modal - 1))
        }
        8 => Formula::know(unary(rng, modal - 1)),
        9 | 10 => {
            let t = term(rng);
            Formula::just(t, unary(rng, modal - 1))
        }
        11 => {
            let (j, t) = (agent(rng), term(rng));
            Formula::prove(j, t, unary(rng, modal - 1))
        }
        _ => {
            let t = term(rng);
            Formula::proven(t, unary(rng, modal - 1))
        }
    }
}

/// A formula over the pools with modal depth at most `max_modal_depth`.
pub fn random_formula<R: Rng>(rng: &mut R, pools: &Pools) -> Formula {
    let size = rng.gen_range(0..=pools.max_size);
    grow(rng, pools, pools.max_modal_depth, size)
}

/// A random instance of scheme `id`, with formula metavariables filled by
/// [`random_formula`], term metavariables by pool terms and agents by pool
/// agents.
pub fn random_instance<R: Rng>(rng: &mut R, id: SchemeId, pools: &Pools) -> Formula {
    let formulas: Vec<Formula> = (0..4).map(|_| random_formula(rng, pools)).collect();
    let terms: Vec<Term> = (0..2).map(|_| pools.terms.choose(rng).expect("non-empty pool").clone()).collect();
    let agent = pools.agents.as_slice().choose(rng).expect("non-empty").clone();
    match id.as_str() {
        "A3" => {
            let n = rng.gen_range(1..=pools.agents.len());
            let chosen: Vec<_> = pools.agents.as_slice().choose_multiple(rng, n).cloned().collect();
            let stits: Vec<Formula> =
                chosen.into_iter().zip(formulas).map(|(j, a)| Formula::cstit(j, a)).collect();
            let left = Formula::conj(stits.iter().cloned().map(Formula::poss)).expect("n >= 1");
            let right = Formula::poss(Formula::conj(stits).expect("n >= 1"));
            Formula::imp(left, right)
        }
        "B13" => nobody_proves_instance(&pools.agents, &agent, &terms[0], &formulas[0]),
        "AS4" => {
            let n = rng.gen_range(1..=2);
            let pairs: Vec<(Term, Formula)> = terms.into_iter().zip(formulas).take(n).collect();
            s4_axiom_instance(&pools.agents, &pairs).expect("n >= 1")
        }
        other => instance_with(other, &formulas, &terms, Some(&agent)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofkit::{is_instance, Mode};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pools() -> Pools {
        Pools::new(
            AgentSet::new(["i", "j"]).unwrap(),
            vec![Term::var("x"), Term::var("y")],
            vec!["p".into(), "q".into()],
        )
    }

    #[test]
    fn instances_match_their_scheme() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pools = pools();
        for id in SchemeId::all() {
            for _ in 0..20 {
                let f = random_instance(&mut rng, id, &pools);
                assert!(is_instance(id, &f, &pools.agents, Mode::PiPrime), "{id}: {f}");
            }
        }
    }

    #[test]
    fn modal_depth_is_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pools = Pools { max_modal_depth: 3, max_size: 12, ..pools() };
        for _ in 0..500 {
            assert!(random_formula(&mut rng, &pools).modal_depth() <= 3);
        }
    }
}
