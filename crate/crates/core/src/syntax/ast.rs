use std::collections::HashSet;
use std::fmt;

use super::SyntaxError;

/// A proof polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    /// `s + t`
    Sum(Box<Term>, Box<Term>),
    /// `s * t`, application of the left proof to the right one.
    App(Box<Term>, Box<Term>),
    /// `!t`, the proof checker.
    Check(Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn sum(left: Term, right: Term) -> Self {
        Term::Sum(Box::new(left), Box::new(right))
    }

    pub fn app(left: Term, right: Term) -> Self {
        Term::App(Box::new(left), Box::new(right))
    }

    pub fn check(inner: Term) -> Self {
        Term::Check(Box::new(inner))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Const(_))
    }

    /// Number of constructors in the term.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::Sum(l, r) | Term::App(l, r) => 1 + l.size() + r.size(),
            Term::Check(t) => 1 + t.size(),
        }
    }

    /// All subterms, children before parents, each once.
    pub fn subterms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        self.collect_subterms(&mut out, &mut seen);
        out
    }

    fn collect_subterms(&self, out: &mut Vec<Term>, seen: &mut HashSet<Term>) {
        match self {
            Term::Var(_) | Term::Const(_) => {}
            Term::Sum(l, r) | Term::App(l, r) => {
                l.collect_subterms(out, seen);
                r.collect_subterms(out, seen);
            }
            Term::Check(t) => t.collect_subterms(out, seen),
        }
        if seen.insert(self.clone()) {
            out.push(self.clone());
        }
    }
}

/// An agent name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Agent(pub String);

impl Agent {
    pub fn new(name: impl Into<String>) -> Self {
        Agent(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Agent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The ambient agent community. Non-empty, duplicate free, and ordered: the
/// order is the canonical one used whenever a conjunction ranges over all
/// agents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AgentSet {
    agents: Vec<Agent>,
}

impl AgentSet {
    pub fn new<I, S>(names: I) -> Result<Self, SyntaxError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut agents: Vec<Agent> = Vec::new();
        for name in names {
            let name = name.into();
            if !is_lower_ident(&name) {
                return Err(SyntaxError::BadAgent(name));
            }
            if agents.iter().any(|a| a.0 == name) {
                return Err(SyntaxError::DuplicateAgent(name));
            }
            agents.push(Agent(name));
        }
        if agents.is_empty() {
            return Err(SyntaxError::EmptyAgentSet);
        }
        Ok(AgentSet { agents })
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Agent> {
        self.agents.iter()
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, agent: &Agent) -> bool {
        self.agents.contains(agent)
    }

    pub fn index_of(&self, agent: &Agent) -> Option<usize> {
        self.agents.iter().position(|a| a == agent)
    }

    pub fn get(&self, idx: usize) -> &Agent {
        &self.agents[idx]
    }

    pub fn as_slice(&self) -> &[Agent] {
        &self.agents
    }
}

impl fmt::Display for AgentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.agents.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

pub(crate) fn is_lower_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// A formula of the explicit jstit language. `Poss` and `CstitDual` are kept
/// as their own nodes for printing; [`Formula::normalize`] rewrites them to
/// `~[]~` and `~[j]~`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Falsum,
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    /// Historical necessity `[]A`.
    Nec(Box<Formula>),
    /// Historical possibility `<>A`.
    Poss(Box<Formula>),
    /// `[j]A`
    Cstit(Agent, Box<Formula>),
    /// `<j>A`
    CstitDual(Agent, Box<Formula>),
    /// `KA`
    Know(Box<Formula>),
    /// `t:A`
    Just(Term, Box<Formula>),
    Prove(Agent, Term, Box<Formula>),
    Proven(Term, Box<Formula>),
    /// `E t`, only accepted when the announcement extension is on.
    Et(Term),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Self {
        Formula::Neg(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn nec(a: Formula) -> Self {
        Formula::Nec(Box::new(a))
    }

    pub fn poss(a: Formula) -> Self {
        Formula::Poss(Box::new(a))
    }

    pub fn cstit(j: Agent, a: Formula) -> Self {
        Formula::Cstit(j, Box::new(a))
    }

    pub fn cstit_dual(j: Agent, a: Formula) -> Self {
        Formula::CstitDual(j, Box::new(a))
    }

    pub fn know(a: Formula) -> Self {
        Formula::Know(Box::new(a))
    }

    pub fn just(t: Term, a: Formula) -> Self {
        Formula::Just(t, Box::new(a))
    }

    pub fn prove(j: Agent, t: Term, a: Formula) -> Self {
        Formula::Prove(j, t, Box::new(a))
    }

    pub fn proven(t: Term, a: Formula) -> Self {
        Formula::Proven(t, Box::new(a))
    }

    /// Right-nested conjunction of the items; `None` for an empty list.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula> {
        fold_right(items.into_iter().collect(), Formula::and)
    }

    /// Right-nested disjunction of the items; `None` for an empty list.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula> {
        fold_right(items.into_iter().collect(), Formula::or)
    }

    /// Immediate formula children, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Falsum | Formula::Et(_) => vec![],
            Formula::Neg(a)
            | Formula::Nec(a)
            | Formula::Poss(a)
            | Formula::Cstit(_, a)
            | Formula::CstitDual(_, a)
            | Formula::Know(a)
            | Formula::Just(_, a)
            | Formula::Prove(_, _, a)
            | Formula::Proven(_, a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => vec![a, b],
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.node_count()).sum::<usize>()
    }

    /// Nesting depth of modal operators (everything except the Boolean
    /// connectives counts as modal).
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Falsum | Formula::Et(_) => 0,
            Formula::Neg(a) => a.modal_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
            _ => 1 + self.children()[0].modal_depth(),
        }
    }

    /// All subformulas including `self`, children before parents, each once.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        self.collect_subformulas(&mut out, &mut seen);
        out
    }

    fn collect_subformulas(&self, out: &mut Vec<Formula>, seen: &mut HashSet<Formula>) {
        if seen.contains(self) {
            return;
        }
        for c in self.children() {
            c.collect_subformulas(out, seen);
        }
        seen.insert(self.clone());
        out.push(self.clone());
    }

    /// Agents mentioned anywhere in the formula, in order of first occurrence.
    pub fn agents(&self) -> Vec<Agent> {
        let mut out: Vec<Agent> = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Cstit(j, _) | Formula::CstitDual(j, _) | Formula::Prove(j, _, _) = f {
                if !out.contains(j) {
                    out.push(j.clone());
                }
            }
        });
        out
    }

    /// Terms occurring at the top level of modal operators (not their subterms).
    pub fn terms(&self) -> Vec<Term> {
        let mut out: Vec<Term> = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Just(t, _)
            | Formula::Prove(_, t, _)
            | Formula::Proven(t, _)
            | Formula::Et(t) = f
            {
                if !out.contains(t) {
                    out.push(t.clone());
                }
            }
        });
        out
    }

    pub fn mentions_et(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::Et(_)));
        found
    }

    /// Pre-order traversal.
    pub fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Rewrites `<>A` to `~[]~A` and `<j>A` to `~[j]~A` everywhere.
    pub fn normalize(&self) -> Formula {
        use Formula::*;
        let n = |a: &Formula| Box::new(a.normalize());
        match self {
            Atom(_) | Falsum | Et(_) => self.clone(),
            Neg(a) => Neg(n(a)),
            And(a, b) => And(n(a), n(b)),
            Or(a, b) => Or(n(a), n(b)),
            Imp(a, b) => Imp(n(a), n(b)),
            Nec(a) => Nec(n(a)),
            Poss(a) => Formula::not(Formula::nec(Formula::not(a.normalize()))),
            Cstit(j, a) => Cstit(j.clone(), n(a)),
            CstitDual(j, a) => {
                Formula::not(Formula::cstit(j.clone(), Formula::not(a.normalize())))
            }
            Know(a) => Know(n(a)),
            Just(t, a) => Just(t.clone(), n(a)),
            Prove(j, t, a) => Prove(j.clone(), t.clone(), n(a)),
            Proven(t, a) => Proven(t.clone(), n(a)),
        }
    }
}

fn fold_right(mut items: Vec<Formula>, op: fn(Formula, Formula) -> Formula) -> Option<Formula> {
    let mut acc = items.pop()?;
    while let Some(prev) = items.pop() {
        acc = op(prev, acc);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn subformulas_children_first() {
        assert_eq!(p().subformulas(), vec![p()]);
        let f = Formula::imp(p(), q());
        assert_eq!(f.subformulas(), vec![p(), q(), f.clone()]);
        let f = Formula::proven(Term::var("t"), p());
        assert_eq!(f.subformulas(), vec![p(), f.clone()]);
    }

    #[test]
    fn subformulas_deduplicated() {
        let f = Formula::and(p(), p());
        assert_eq!(f.subformulas(), vec![p(), f.clone()]);
        assert!(f.subformulas().len() <= f.node_count());
    }

    #[test]
    fn normalize_is_idempotent() {
        let j = Agent::new("j");
        let f = Formula::poss(Formula::cstit_dual(j, p()));
        let once = f.normalize();
        assert_eq!(once, once.normalize());
        assert!(!format!("{once:?}").contains("Poss"));
    }

    #[test]
    fn agent_set_rules() {
        assert!(AgentSet::new(Vec::<String>::new()).is_err());
        assert!(AgentSet::new(["i", "i"]).is_err());
        assert!(AgentSet::new(["I"]).is_err());
        let ag = AgentSet::new(["j", "i"]).unwrap();
        assert_eq!(ag.index_of(&Agent::new("i")), Some(1));
    }

    #[test]
    fn conj_is_right_nested() {
        let f = Formula::conj([p(), q(), Formula::Falsum]).unwrap();
        assert_eq!(f, Formula::and(p(), Formula::and(q(), Formula::Falsum)));
        assert!(Formula::disj(Vec::new()).is_none());
    }
}
