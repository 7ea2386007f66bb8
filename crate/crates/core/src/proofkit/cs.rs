use std::collections::BTreeSet;

use thiserror::Error;

use crate::syntax::{parse_formula, AgentSet, Formula, Term};

use super::schemes::{match_axiom, Mode};

/// A finite constant specification: formulas `c_n:...:c_1:A` with `A` an
/// axiom instance. Stored normalized, so membership ignores how duals are
/// written.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstantSpecification {
    formulas: BTreeSet<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0} is not of the form c:A with c a proof constant")]
    NotConstantAssertion(Formula),
    #[error("{formula}: {inner} is not an axiom instance")]
    NotAnAxiom { formula: Formula, inner: Formula },
    #[error("{formula} is listed but {missing} is not")]
    NotDownwardClosed { formula: Formula, missing: Formula },
}

/// Peels `c_n:...:c_1:A` into `([c_n, ..., c_1], A)`; `None` unless the
/// outermost term is a constant.
fn peel(f: &Formula) -> Option<(Vec<&Term>, &Formula)> {
    let mut consts = Vec::new();
    let mut cur = f;
    while let Formula::Just(t @ Term::Const(_), inner) = cur {
        consts.push(t);
        cur = inner;
    }
    (!consts.is_empty()).then_some((consts, cur))
}

impl ConstantSpecification {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_formulas<I: IntoIterator<Item = Formula>>(it: I) -> Self {
        ConstantSpecification { formulas: it.into_iter().map(|f| f.normalize()).collect() }
    }

    /// One formula per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, agents: &AgentSet) -> Result<Self, CsError> {
        let mut formulas = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let f = parse_formula(body, agents)
                .map_err(|e| CsError::Syntax { line: i + 1, message: e.to_string() })?;
            formulas.push(f);
        }
        Ok(Self::from_formulas(formulas))
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.formulas.iter()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.formulas.contains(&f.normalize())
    }

    /// `{A | c:A ∈ CS}` grouped by constant.
    pub fn assertions(&self) -> Vec<(Term, Formula)> {
        self.formulas
            .iter()
            .filter_map(|f| match f {
                Formula::Just(c @ Term::Const(_), a) => Some((c.clone(), (**a).clone())),
                _ => None,
            })
            .collect()
    }

    /// Checks shape, axiom instances and downward closure.
    pub fn validate(&self, agents: &AgentSet) -> Result<(), CsError> {
        for f in &self.formulas {
            let (consts, inner) = peel(f).ok_or_else(|| CsError::NotConstantAssertion(f.clone()))?;
            if match_axiom(inner, agents, Mode::Pi).is_none() {
                return Err(CsError::NotAnAxiom { formula: f.clone(), inner: inner.clone() });
            }
            if consts.len() > 1 {
                let Formula::Just(_, rest) = f else { unreachable!("peeled above") };
                if !self.formulas.contains(rest) {
                    return Err(CsError::NotDownwardClosed { formula: f.clone(), missing: (**rest).clone() });
                }
            }
        }
        Ok(())
    }
}
