//! Axiom schemes and matching.
//!
//! Schemes are written as patterns in the ordinary concrete syntax, with
//! uppercase letters for formula metavariables, proof variables for term
//! metavariables and agent names for agent metavariables. Matching happens
//! on formulas with `<>` and `<j>` rewritten to their `~[]~` forms, so a
//! dual written either way matches the same scheme.
//!
//! Three schemes are not fixed-arity and have their own matchers: the
//! independence scheme (pairwise distinct agents, any number of conjuncts),
//! the "nobody proves it" scheme whose conjunction ranges over the whole
//! agent community in its canonical order, and the axiom form of the S4
//! rule, available only when that rule is replaced.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::syntax::{parse_pattern, Agent, AgentSet, Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchemeId(&'static str);

impl SchemeId {
    pub fn as_str(self) -> &'static str {
        self.0
    }

    pub fn parse(text: &str) -> Option<SchemeId> {
        SCHEMES.iter().find(|s| s.id == text).map(|s| SchemeId(s.id))
    }

    /// The group label, e.g. `A0` for `A0-3`, `A1` for `A1-K`.
    pub fn group(self) -> &'static str {
        self.0.split('-').next().unwrap_or(self.0)
    }

    pub fn all() -> impl Iterator<Item = SchemeId> {
        SCHEMES.iter().map(|s| SchemeId(s.id))
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Which system a proof is checked in: with the S4 rule, or with the rule
/// replaced by its axiom scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Pi,
    PiPrime,
}

#[derive(Clone, Copy, Debug)]
enum Shape {
    Pattern(&'static str),
    Independence,
    NobodyProves,
    S4Axiom,
}

struct Scheme {
    id: &'static str,
    shape: Shape,
}

const fn pat(id: &'static str, text: &'static str) -> Scheme {
    Scheme { id, shape: Shape::Pattern(text) }
}

/// In matching order.
static SCHEMES: &[Scheme] = &[
    pat("A0-1", "A -> (B -> A)"),
    pat("A0-2", "(A -> (B -> C)) -> ((A -> B) -> (A -> C))"),
    pat("A0-3", "A & B -> A"),
    pat("A0-4", "A & B -> B"),
    pat("A0-5", "A -> (B -> A & B)"),
    pat("A0-6", "A -> A | B"),
    pat("A0-7", "B -> A | B"),
    pat("A0-8", "(A -> C) -> ((B -> C) -> (A | B -> C))"),
    pat("A0-9", "(A -> B) -> ((A -> ~B) -> ~A)"),
    pat("A0-10", "~~A -> A"),
    pat("A0-11", "false -> A"),
    pat("A0-12", "~A -> (A -> false)"),
    pat("A1-K", "[](A -> B) -> ([]A -> []B)"),
    pat("A1-T", "[]A -> A"),
    pat("A1-5", "~[]A -> []~[]A"),
    pat("A1-Kj", "[j](A -> B) -> ([j]A -> [j]B)"),
    pat("A1-Tj", "[j]A -> A"),
    pat("A1-5j", "~[j]A -> [j]~[j]A"),
    pat("A2", "[]A -> [j]A"),
    Scheme { id: "A3", shape: Shape::Independence },
    pat("A4", "s:(A -> B) -> (t:A -> (s*t):B)"),
    pat("A5", "t:A -> !t:t:A & KA"),
    pat("A6", "s:A | t:A -> (s + t):A"),
    pat("A7-K", "K(A -> B) -> (KA -> KB)"),
    pat("A7-T", "KA -> A"),
    pat("A7-4", "KA -> KKA"),
    pat("A8", "KA -> []K[]A"),
    pat("B9", "Prove(j, t, A) -> ~Proven(t, A) & [j]Prove(j, t, A) & ~[]Prove(j, t, A) & t:A"),
    pat("B10", "Prove(j, t, A) & t:B -> Prove(j, t, B)"),
    pat("B11", "Proven(t, A) -> KProven(t, A) & t:A"),
    pat("B12", "Proven(t, A) & t:B -> Proven(t, B)"),
    Scheme { id: "B13", shape: Shape::NobodyProves },
    Scheme { id: "AS4", shape: Shape::S4Axiom },
];

fn compiled() -> &'static HashMap<&'static str, Formula> {
    static CELL: OnceLock<HashMap<&'static str, Formula>> = OnceLock::new();
    CELL.get_or_init(|| {
        SCHEMES
            .iter()
            .filter_map(|s| match s.shape {
                Shape::Pattern(text) => Some((s.id, parse_pattern(text).normalize())),
                _ => None,
            })
            .collect()
    })
}

/// Metavariable assignment produced by a successful match.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings {
    pub formulas: HashMap<String, Formula>,
    pub terms: HashMap<String, Term>,
    pub agents: HashMap<String, Agent>,
}

fn is_meta(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

fn bind<K: Clone + Eq + std::hash::Hash, V: Clone + PartialEq>(
    map: &mut HashMap<K, V>,
    key: &K,
    value: &V,
) -> bool {
    match map.get(key) {
        Some(old) => old == value,
        None => {
            map.insert(key.clone(), value.clone());
            true
        }
    }
}

fn match_term(p: &Term, t: &Term, b: &mut Bindings) -> bool {
    match (p, t) {
        (Term::Var(v), _) => bind(&mut b.terms, v, t),
        (Term::Const(c), Term::Const(d)) => c == d,
        (Term::Sum(p1, p2), Term::Sum(t1, t2)) | (Term::App(p1, p2), Term::App(t1, t2)) => {
            match_term(p1, t1, b) && match_term(p2, t2, b)
        }
        (Term::Check(p1), Term::Check(t1)) => match_term(p1, t1, b),
        _ => false,
    }
}

fn match_agent(p: &Agent, a: &Agent, b: &mut Bindings) -> bool {
    bind(&mut b.agents, &p.0, a)
}

fn match_formula(p: &Formula, f: &Formula, b: &mut Bindings) -> bool {
    use Formula::*;
    match (p, f) {
        (Atom(name), _) if is_meta(name) => bind(&mut b.formulas, name, f),
        (Atom(x), Atom(y)) => x == y,
        (Falsum, Falsum) => true,
        (Neg(p1), Neg(f1)) | (Nec(p1), Nec(f1)) | (Know(p1), Know(f1)) | (Poss(p1), Poss(f1)) => {
            match_formula(p1, f1, b)
        }
        (And(p1, p2), And(f1, f2)) | (Or(p1, p2), Or(f1, f2)) | (Imp(p1, p2), Imp(f1, f2)) => {
            match_formula(p1, f1, b) && match_formula(p2, f2, b)
        }
        (Cstit(j, p1), Cstit(k, f1)) | (CstitDual(j, p1), CstitDual(k, f1)) => {
            match_agent(j, k, b) && match_formula(p1, f1, b)
        }
        (Just(s, p1), Just(t, f1)) | (Proven(s, p1), Proven(t, f1)) => {
            match_term(s, t, b) && match_formula(p1, f1, b)
        }
        (Prove(j, s, p1), Prove(k, t, f1)) => {
            match_agent(j, k, b) && match_term(s, t, b) && match_formula(p1, f1, b)
        }
        (Et(s), Et(t)) => match_term(s, t, b),
        _ => false,
    }
}

/// Splits a right-nested chain built by `op`: `x & (y & z)` gives `[x, y, z]`.
fn spine(f: &Formula, conj: bool) -> Vec<&Formula> {
    let mut out = Vec::new();
    let mut cur = f;
    loop {
        match (cur, conj) {
            (Formula::And(a, rest), true) | (Formula::Or(a, rest), false) => {
                out.push(&**a);
                cur = rest;
            }
            _ => {
                out.push(cur);
                return out;
            }
        }
    }
}

fn unposs(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Neg(a) => match &**a {
            Formula::Nec(b) => match &**b {
                Formula::Neg(c) => Some(c),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

/// `(<>[j1]A1 & ... & <>[jn]An) -> <>([j1]A1 & ... & [jn]An)`, agents
/// pairwise distinct.
fn match_independence(f: &Formula) -> bool {
    let Formula::Imp(lhs, rhs) = f else { return false };
    let left: Vec<&Formula> = spine(lhs, true);
    let Some(inner) = unposs(rhs) else { return false };
    let right: Vec<&Formula> = spine(inner, true);
    if left.len() != right.len() {
        return false;
    }
    let mut seen = Vec::new();
    for (l, r) in left.iter().zip(&right) {
        let Formula::Cstit(j, _) = r else { return false };
        if seen.contains(&j) {
            return false;
        }
        seen.push(j);
        if unposs(l) != Some(*r) {
            return false;
        }
    }
    true
}

/// `~Prove(i,t,A) & ... ` over the whole community, canonical order.
pub fn nobody_proves(agents: &AgentSet, t: &Term, a: &Formula) -> Formula {
    Formula::conj(agents.iter().map(|j| Formula::not(Formula::prove(j.clone(), t.clone(), a.clone()))))
        .expect("agent sets are non-empty")
}

/// `~Prove(j,t,A) -> <j>(nobody proves t:A)`.
pub fn nobody_proves_instance(agents: &AgentSet, j: &Agent, t: &Term, a: &Formula) -> Formula {
    Formula::imp(
        Formula::not(Formula::prove(j.clone(), t.clone(), a.clone())),
        Formula::cstit_dual(j.clone(), nobody_proves(agents, t, a)),
    )
}

fn match_nobody_proves(f: &Formula, agents: &AgentSet) -> bool {
    let Formula::Imp(lhs, _) = f else { return false };
    let Formula::Neg(inner) = &**lhs else { return false };
    let Formula::Prove(j, t, a) = &**inner else { return false };
    nobody_proves_instance(agents, j, t, a).normalize() == *f
}

/// `~Proven(t1,B1) | ... | ~Proven(tn,Bn)`.
pub fn unproven_disjunction(pairs: &[(Term, Formula)]) -> Option<Formula> {
    Formula::disj(pairs.iter().map(|(t, b)| Formula::not(Formula::proven(t.clone(), b.clone()))))
}

/// The consequent of the S4 rule for the given pairs.
pub fn unproved_disjunction(agents: &AgentSet, pairs: &[(Term, Formula)]) -> Option<Formula> {
    Formula::disj(pairs.iter().map(|(t, b)| nobody_proves(agents, t, b)))
}

/// `K(~Proven(t1,B1) | ...) -> (nobody proves t1:B1) | ...`.
pub fn s4_axiom_instance(agents: &AgentSet, pairs: &[(Term, Formula)]) -> Option<Formula> {
    Some(Formula::imp(
        Formula::know(unproven_disjunction(pairs)?),
        unproved_disjunction(agents, pairs)?,
    ))
}

/// Reads the pairs off a disjunction of `~Proven(t, B)`.
pub fn unproven_pairs(d: &Formula) -> Option<Vec<(Term, Formula)>> {
    spine(d, false)
        .into_iter()
        .map(|x| match x {
            Formula::Neg(inner) => match &**inner {
                Formula::Proven(t, b) => Some((t.clone(), (**b).clone())),
                _ => None,
            },
            _ => None,
        })
        .collect()
}

fn match_s4_axiom(f: &Formula, agents: &AgentSet) -> bool {
    let Formula::Imp(lhs, _) = f else { return false };
    let Formula::Know(d) = &**lhs else { return false };
    let Some(pairs) = unproven_pairs(d) else { return false };
    s4_axiom_instance(agents, &pairs).map(|g| g.normalize()).as_ref() == Some(f)
}

fn scheme(id: SchemeId) -> &'static Scheme {
    SCHEMES.iter().find(|s| s.id == id.0).expect("scheme ids come from the table")
}

/// Metavariable bindings if `f` is an instance of the fixed-arity scheme `id`.
pub fn match_bindings(id: SchemeId, f: &Formula) -> Option<Bindings> {
    let pattern = compiled().get(id.0)?;
    let mut b = Bindings::default();
    match_formula(pattern, &f.normalize(), &mut b).then_some(b)
}

/// Is `f` an instance of scheme `id`? The S4 axiom form only counts in
/// [`Mode::PiPrime`]; agents of `f` must belong to `agents`.
pub fn is_instance(id: SchemeId, f: &Formula, agents: &AgentSet, mode: Mode) -> bool {
    if f.agents().iter().any(|a| !agents.contains(a)) {
        return false;
    }
    let f = f.normalize();
    match scheme(id).shape {
        Shape::Pattern(_) => {
            let mut b = Bindings::default();
            match_formula(&compiled()[id.0], &f, &mut b)
        }
        Shape::Independence => match_independence(&f),
        Shape::NobodyProves => match_nobody_proves(&f, agents),
        Shape::S4Axiom => mode == Mode::PiPrime && match_s4_axiom(&f, agents),
    }
}

/// First scheme (in table order) that `f` instantiates.
pub fn match_axiom(f: &Formula, agents: &AgentSet, mode: Mode) -> Option<SchemeId> {
    SchemeId::all().find(|&id| is_instance(id, f, agents, mode))
}

fn substitute_term(t: &Term, b: &Bindings) -> Term {
    match t {
        Term::Var(v) => b.terms.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Const(_) => t.clone(),
        Term::Sum(l, r) => Term::sum(substitute_term(l, b), substitute_term(r, b)),
        Term::App(l, r) => Term::app(substitute_term(l, b), substitute_term(r, b)),
        Term::Check(x) => Term::check(substitute_term(x, b)),
    }
}

fn substitute(f: &Formula, b: &Bindings) -> Formula {
    use Formula::*;
    let agent = |j: &Agent| b.agents.get(&j.0).cloned().unwrap_or_else(|| j.clone());
    let s = |x: &Formula| substitute(x, b);
    match f {
        Atom(name) if is_meta(name) => b.formulas.get(name).cloned().unwrap_or_else(|| f.clone()),
        Atom(_) | Falsum => f.clone(),
        Neg(a) => Formula::not(s(a)),
        And(x, y) => Formula::and(s(x), s(y)),
        Or(x, y) => Formula::or(s(x), s(y)),
        Imp(x, y) => Formula::imp(s(x), s(y)),
        Nec(a) => Formula::nec(s(a)),
        Poss(a) => Formula::poss(s(a)),
        Cstit(j, a) => Formula::cstit(agent(j), s(a)),
        CstitDual(j, a) => Formula::cstit_dual(agent(j), s(a)),
        Know(a) => Formula::know(s(a)),
        Just(t, a) => Formula::just(substitute_term(t, b), s(a)),
        Prove(j, t, a) => Formula::prove(agent(j), substitute_term(t, b), s(a)),
        Proven(t, a) => Formula::proven(substitute_term(t, b), s(a)),
        Et(t) => Et(substitute_term(t, b)),
    }
}

/// Builds an instance of a fixed-arity scheme. Formula metavariables are
/// `A`..`D`, term metavariables `s` and `t`, the agent metavariable `j`.
/// Unbound metavariables are left in place.
pub fn instantiate(id: SchemeId, b: &Bindings) -> Option<Formula> {
    match scheme(id).shape {
        Shape::Pattern(text) => Some(substitute(&parse_pattern(text), b)),
        _ => None,
    }
}

impl Bindings {
    pub fn formula(mut self, name: &str, f: Formula) -> Self {
        self.formulas.insert(name.to_string(), f);
        self
    }

    pub fn term(mut self, name: &str, t: Term) -> Self {
        self.terms.insert(name.to_string(), t);
        self
    }

    pub fn agent(mut self, name: &str, a: Agent) -> Self {
        self.agents.insert(name.to_string(), a);
        self
    }
}

/// Convenience for [`instantiate`] with formula metavariables bound in
/// order `A`, `B`, `C`, `D`.
pub fn instance(id: &str, formulas: &[Formula]) -> Formula {
    instance_with(id, formulas, &[], None)
}

/// Like [`instance`], with term metavariables `s`, `t` (in that order when
/// two are given, `t` alone otherwise) and the agent metavariable `j`.
pub fn instance_with(id: &str, formulas: &[Formula], terms: &[Term], agent: Option<&Agent>) -> Formula {
    let sid = SchemeId::parse(id).unwrap_or_else(|| panic!("unknown scheme {id}"));
    let mut b = Bindings::default();
    for (name, f) in ["A", "B", "C", "D"].iter().zip(formulas) {
        b = b.formula(name, f.clone());
    }
    match terms {
        [] => {}
        [t] => b = b.term("t", t.clone()),
        [s, t, ..] => b = b.term("s", s.clone()).term("t", t.clone()),
    }
    if let Some(j) = agent {
        b = b.agent("j", j.clone());
    }
    instantiate(sid, &b).unwrap_or_else(|| panic!("scheme {id} has no fixed pattern"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn ag() -> AgentSet {
        AgentSet::new(["i", "j"]).unwrap()
    }

    fn m(text: &str) -> Option<&'static str> {
        let f = parse_formula(text, &ag()).unwrap();
        match_axiom(&f, &ag(), Mode::Pi).map(SchemeId::as_str)
    }

    #[test]
    fn recognises_basic_schemes() {
        assert_eq!(m("s:(p->q) -> (t:p -> (s*t):q)"), Some("A4"));
        assert_eq!(
            m("Prove(j,t,p) -> (~Proven(t,p) & [j]Prove(j,t,p) & ~[]Prove(j,t,p) & t:p)"),
            Some("B9")
        );
        assert_eq!(m("p -> p"), None);
        assert_eq!(m("Kp -> p"), Some("A7-T"));
        assert_eq!(m("[]q -> [i]q"), Some("A2"));
        assert_eq!(m("<>p -> []<>p"), Some("A1-5"));
        assert_eq!(m("<j>p -> [j]<j>p"), Some("A1-5j"));
        assert_eq!(m("t:p -> !t:t:p & Kp"), Some("A5"));
        assert_eq!(m("x:p | y:p -> (x + y):p"), Some("A6"));
        assert_eq!(m("x:p | y:p -> (y + x):p"), None);
    }

    #[test]
    fn independence_needs_distinct_agents() {
        assert_eq!(m("<>[i]p & <>[j]q -> <>([i]p & [j]q)"), Some("A3"));
        assert_eq!(m("<>[i]p & <>[i]q -> <>([i]p & [i]q)"), None);
        assert_eq!(m("<>[i]p -> <>[i]p"), Some("A3"));
    }

    #[test]
    fn nobody_proves_follows_canonical_order() {
        assert_eq!(m("~Prove(j,t,p) -> <j>(~Prove(i,t,p) & ~Prove(j,t,p))"), Some("B13"));
        assert_eq!(m("~Prove(j,t,p) -> <j>(~Prove(j,t,p) & ~Prove(i,t,p))"), None);
    }

    #[test]
    fn s4_axiom_only_in_primed_mode() {
        let f = parse_formula("K~Proven(t,p) -> ~Prove(i,t,p) & ~Prove(j,t,p)", &ag()).unwrap();
        assert_eq!(match_axiom(&f, &ag(), Mode::Pi), None);
        assert_eq!(match_axiom(&f, &ag(), Mode::PiPrime).map(SchemeId::as_str), Some("AS4"));
        let g = parse_formula(
            "K(~Proven(t,p) | ~Proven(s,q)) -> ~Prove(i,t,p) & ~Prove(j,t,p) | ~Prove(i,s,q) & ~Prove(j,s,q)",
            &ag(),
        )
        .unwrap();
        assert!(is_instance(SchemeId::parse("AS4").unwrap(), &g, &ag(), Mode::PiPrime));
    }

    #[test]
    fn foreign_agents_never_match() {
        let f = crate::syntax::parse_formula_with("[]p -> [k]p", crate::syntax::ParseOptions::any_agents())
            .unwrap();
        assert_eq!(match_axiom(&f, &ag(), Mode::Pi), None);
    }

    #[test]
    fn instances_match_their_scheme() {
        let (p, q) = (Formula::atom("p"), Formula::atom("q"));
        for id in SchemeId::all() {
            if compiled().contains_key(id.as_str()) {
                let f = instance_with(id.as_str(), &[p.clone(), q.clone(), p.clone(), q.clone()], &[Term::var("x"), Term::var("y")], Some(&Agent::new("i")));
                assert!(is_instance(id, &f, &ag(), Mode::Pi), "{id}: {f}");
            }
        }
    }
}
