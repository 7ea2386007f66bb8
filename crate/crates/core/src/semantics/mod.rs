//! The satisfaction relation on finite jstit models.
//!
//! [`Evaluator`] computes a formula's truth value at every moment-history
//! pair at once and memoizes by subformula, so the `K` and `t:` clauses cost
//! one pass over the relation instead of a nested evaluation per pair.
//! [`oracle`] is a direct transcription of the clauses without sharing, used
//! as a differential check.

pub mod oracle;

use std::collections::HashMap;
use std::rc::Rc;

use thiserror::Error;

use crate::model::{validate, FiniteJstitModel, HistoryId, MomentId, QueryError};
use crate::syntax::{Formula, Term};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalOptions {
    /// Evaluate even if the model fails validation.
    pub waive_validation: bool,
    /// Admit the `E t` atom.
    pub enable_et: bool,
}

impl EvalOptions {
    pub fn waived() -> Self {
        EvalOptions { waive_validation: true, ..Self::default() }
    }

    pub fn with_et(mut self) -> Self {
        self.enable_et = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("model violates {0}; pass the validation waiver to evaluate anyway")]
    InvalidModel(String),
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("agent '{0}' is not in the model")]
    UnknownAgent(String),
    #[error("the E atom requires the announcement extension")]
    EtDisabled,
}

type Table = Rc<[bool]>;

pub struct Evaluator<'m> {
    model: &'m FiniteJstitModel,
    opts: EvalOptions,
    memo: HashMap<Formula, Table>,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m FiniteJstitModel, opts: EvalOptions) -> Result<Self, EvalError> {
        if !opts.waive_validation {
            let report = validate(model);
            if !report.is_clean() {
                let names: Vec<String> = report.constraints().iter().map(|c| c.to_string()).collect();
                return Err(EvalError::InvalidModel(names.join(", ")));
            }
        }
        Ok(Evaluator { model, opts, memo: HashMap::new() })
    }

    pub fn model(&self) -> &'m FiniteJstitModel {
        self.model
    }

    fn admit(&self, f: &Formula) -> Result<(), EvalError> {
        for a in f.agents() {
            if !self.model.agents().contains(&a) {
                return Err(EvalError::UnknownAgent(a.0));
            }
        }
        if !self.opts.enable_et && f.mentions_et() {
            return Err(EvalError::EtDisabled);
        }
        Ok(())
    }

    pub fn eval(&mut self, m: MomentId, h: HistoryId, f: &Formula) -> Result<bool, EvalError> {
        self.model.check_pair(m, h)?;
        self.admit(f)?;
        let table = self.table(f);
        Ok(table[self.model.pair_index(m, h).expect("checked pair")])
    }

    /// The first pair (in moment order) falsifying `f`, if any.
    pub fn counterexample(&mut self, f: &Formula) -> Result<Option<(MomentId, HistoryId)>, EvalError> {
        self.admit(f)?;
        let table = self.table(f);
        Ok(table.iter().position(|&b| !b).map(|i| self.model.pairs()[i]))
    }

    pub fn is_moment_determinate(&mut self, m: MomentId, f: &Formula) -> Result<bool, EvalError> {
        if m.0 >= self.model.moment_count() {
            return Err(QueryError::UnknownMoment(format!("#{}", m.0)).into());
        }
        self.admit(f)?;
        let table = self.table(f);
        let mut values = self
            .model
            .histories_through(m)
            .iter()
            .map(|&h| table[self.model.pair_index(m, h).expect("history through moment")]);
        let first = values.next().expect("every moment lies on a history");
        Ok(values.all(|v| v == first))
    }

    fn table(&mut self, f: &Formula) -> Table {
        if let Some(t) = self.memo.get(f) {
            return t.clone();
        }
        let t = self.compute(f);
        self.memo.insert(f.clone(), t.clone());
        t
    }

    fn per_pair(&self, mut g: impl FnMut(MomentId, HistoryId) -> bool) -> Table {
        self.model.pairs().iter().map(|&(m, h)| g(m, h)).collect()
    }

    fn at(&self, table: &[bool], m: MomentId, h: HistoryId) -> bool {
        table[self.model.pair_index(m, h).expect("pair of the model")]
    }

    /// Per moment: does the table hold at every history through it?
    fn settled(&self, table: &[bool]) -> Vec<bool> {
        self.model
            .moments()
            .map(|m| self.model.histories_through(m).iter().all(|&h| self.at(table, m, h)))
            .collect()
    }

    fn justified(&mut self, t: &Term, a: &Formula) -> Vec<bool> {
        let inner = self.table(a);
        let settled = self.settled(&inner);
        let model = self.model;
        model
            .moments()
            .map(|m| {
                model.evidence().contains(m, t, a)
                    && model.moments().all(|m2| !model.r_e(m, m2) || settled[m2.0])
            })
            .collect()
    }

    fn compute(&mut self, f: &Formula) -> Table {
        let model = self.model;
        match f {
            Formula::Atom(p) => self.per_pair(|m, h| model.holds_atom(p, m, h)),
            Formula::Falsum => self.per_pair(|_, _| false),
            Formula::Neg(a) => self.table(a).iter().map(|b| !b).collect(),
            Formula::And(a, b) => {
                let (x, y) = (self.table(a), self.table(b));
                x.iter().zip(y.iter()).map(|(p, q)| *p && *q).collect()
            }
            Formula::Or(a, b) => {
                let (x, y) = (self.table(a), self.table(b));
                x.iter().zip(y.iter()).map(|(p, q)| *p || *q).collect()
            }
            Formula::Imp(a, b) => {
                let (x, y) = (self.table(a), self.table(b));
                x.iter().zip(y.iter()).map(|(p, q)| !*p || *q).collect()
            }
            Formula::Nec(a) | Formula::Poss(a) => {
                let x = self.table(a);
                let dual = matches!(f, Formula::Poss(_));
                self.per_pair(|m, _| {
                    let mut hs = model.histories_through(m).iter();
                    if dual {
                        hs.any(|&g| self.at(&x, m, g))
                    } else {
                        hs.all(|&g| self.at(&x, m, g))
                    }
                })
            }
            Formula::Cstit(j, a) | Formula::CstitDual(j, a) => {
                let x = self.table(a);
                let j = model.agent_index(j).expect("agents admitted");
                let dual = matches!(f, Formula::CstitDual(..));
                self.per_pair(|m, h| {
                    let mut cell = model.choice_cell(m, h, j).iter();
                    if dual {
                        cell.any(|&g| self.at(&x, m, g))
                    } else {
                        cell.all(|&g| self.at(&x, m, g))
                    }
                })
            }
            Formula::Know(a) => {
                let x = self.table(a);
                let settled = self.settled(&x);
                let known: Vec<bool> = model
                    .moments()
                    .map(|m| model.moments().all(|m2| !model.r(m, m2) || settled[m2.0]))
                    .collect();
                self.per_pair(|m, _| known[m.0])
            }
            Formula::Just(t, a) => {
                let just = self.justified(t, a);
                self.per_pair(|m, _| just[m.0])
            }
            Formula::Prove(j, t, a) => {
                let just = self.justified(t, a);
                let j = model.agent_index(j).expect("agents admitted");
                self.per_pair(|m, h| {
                    just[m.0] && model.act_cell(m, h, j).contains(t) && !model.act_moment(m).contains(t)
                })
            }
            Formula::Proven(t, a) => {
                let just = self.justified(t, a);
                self.per_pair(|m, _| just[m.0] && model.act_moment(m).contains(t))
            }
            Formula::Et(t) => self.per_pair(|m, h| model.act(m, h).contains(t)),
        }
    }
}

/// `M, m, h ⊨ f`.
pub fn eval(
    model: &FiniteJstitModel,
    m: MomentId,
    h: HistoryId,
    f: &Formula,
    opts: EvalOptions,
) -> Result<bool, EvalError> {
    Evaluator::new(model, opts)?.eval(m, h, f)
}

/// `None` if `f` holds at every pair, otherwise a falsifying pair.
pub fn valid_in_model(
    model: &FiniteJstitModel,
    f: &Formula,
    opts: EvalOptions,
) -> Result<Option<(MomentId, HistoryId)>, EvalError> {
    Evaluator::new(model, opts)?.counterexample(f)
}

pub fn is_moment_determinate(
    model: &FiniteJstitModel,
    m: MomentId,
    f: &Formula,
    opts: EvalOptions,
) -> Result<bool, EvalError> {
    Evaluator::new(model, opts)?.is_moment_determinate(m, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::load_model;
    use crate::syntax::{parse_formula_with, ParseOptions};

    fn f(text: &str, model: &FiniteJstitModel) -> Formula {
        parse_formula_with(text, ParseOptions::new(model.agents()).with_et(true)).unwrap()
    }

    #[test]
    fn necessity_on_single_moment() {
        let m = load_model("agents: j\nmoments: m\nval: p @ ALL\n").unwrap();
        let (mo, h) = m.resolve_pair("m", "m").unwrap();
        assert!(eval(&m, mo, h, &f("[]p", &m), EvalOptions::default()).unwrap());
        assert!(valid_in_model(&m, &f("p -> p", &m), EvalOptions::default()).unwrap().is_none());
    }

    #[test]
    fn valuation_splits_histories() {
        let m = load_model("agents: j\nmoments: r a b\norder: r<a r<b\nval: p @ r/a\n").unwrap();
        let r = m.moment_id("r").unwrap();
        let opts = EvalOptions::default();
        assert!(!is_moment_determinate(&m, r, &f("p", &m), opts).unwrap());
        assert!(is_moment_determinate(&m, r, &f("Kp", &m), opts).unwrap());
        assert!(is_moment_determinate(&m, r, &f("<>p", &m), opts).unwrap());
        let (_, ha) = m.resolve_pair("r", "a").unwrap();
        assert!(eval(&m, r, ha, &f("<>p & <>~p", &m), opts).unwrap());
    }

    #[test]
    fn invalid_models_need_a_waiver() {
        let m = load_model("agents: j\nmoments: a b\n").unwrap();
        let p = f("p", &m);
        assert!(matches!(valid_in_model(&m, &p, EvalOptions::default()), Err(EvalError::InvalidModel(_))));
        assert!(valid_in_model(&m, &p, EvalOptions::waived()).is_ok());
    }

    #[test]
    fn et_is_gated() {
        let m = load_model("agents: j\nmoments: m\nact: m/m = x\n").unwrap();
        let e = f("E x", &m);
        let (mo, h) = m.resolve_pair("m", "m").unwrap();
        assert_eq!(eval(&m, mo, h, &e, EvalOptions::waived()), Err(EvalError::EtDisabled));
        let opts = EvalOptions::waived().with_et();
        assert!(eval(&m, mo, h, &e, opts).unwrap());
    }

    #[test]
    fn foreign_agent_is_rejected() {
        let m = load_model("agents: j\nmoments: m\n").unwrap();
        let g = parse_formula_with("[k]p", ParseOptions::any_agents()).unwrap();
        let (mo, h) = m.resolve_pair("m", "m").unwrap();
        assert_eq!(eval(&m, mo, h, &g, EvalOptions::default()), Err(EvalError::UnknownAgent("k".into())));
    }
}
