//! Finite jstit models.
//!
//! A model is built from a [`ModelDescription`] (the declarative data that the
//! text format carries) and is immutable afterwards. Histories are keyed by
//! their leaf: in a finite tree without backward branching every maximal
//! chain ends in exactly one maximal moment, so `Choice`, `Act` and the
//! valuation can all be written in terms of leaves.

mod evidence;
mod format;
mod validate;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::syntax::{Agent, AgentSet, SyntaxError, Term};

pub use evidence::{Evidence, EvidenceSet};
pub use format::load_model;
pub use validate::{validate, Constraint, ConstraintReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MomentId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HistoryId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("agents: {0}")]
    Agents(#[from] SyntaxError),
    #[error("moment '{0}' declared twice")]
    DuplicateMoment(String),
    #[error("unknown moment '{0}'")]
    UnknownMoment(String),
    #[error("unknown agent '{0}'")]
    UnknownAgent(String),
    #[error("the model has no moments")]
    NoMoments,
    #[error("order is not antisymmetric: '{0}' and '{1}' precede each other")]
    OrderCycle(String, String),
    #[error("choice at {moment} for {agent}: {message}")]
    ChoiceBlock { moment: String, agent: String, message: String },
    #[error("choice at {moment} for {agent} given twice")]
    DuplicateChoice { moment: String, agent: String },
    #[error("'{leaf}' is not a leaf above '{moment}'")]
    NotALeafAbove { moment: String, leaf: String },
}

/// How a preorder is given: a base relation plus extra pairs, closed
/// reflexively and transitively when the model is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationBase {
    Identity,
    /// The temporal order.
    Order,
    /// The epistemic relation `R` (only meaningful for `R_e`).
    R,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpec {
    pub base: RelationBase,
    pub pairs: Vec<(String, String)>,
}

impl RelationSpec {
    pub fn order() -> Self {
        RelationSpec { base: RelationBase::Order, pairs: vec![] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceEntry {
    pub moment: String,
    pub agent: String,
    pub blocks: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActEntry {
    pub moment: String,
    pub leaf: String,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvidenceEntry {
    pub moment: Option<String>,
    pub term: Option<Term>,
    pub set: EvidenceSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValuationPoints {
    All,
    Pairs(Vec<(String, String)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationEntry {
    pub atom: String,
    pub points: ValuationPoints,
}

/// The editable, name-based form of a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelDescription {
    pub agents: Vec<String>,
    pub moments: Vec<String>,
    /// Covering pairs `(earlier, later)`; closed on build.
    pub order: Vec<(String, String)>,
    pub choice: Vec<ChoiceEntry>,
    pub act: Vec<ActEntry>,
    pub evidence: Vec<EvidenceEntry>,
    pub r: RelationSpec,
    /// `None` means `R_e = R`.
    pub re: Option<RelationSpec>,
    pub valuation: Vec<ValuationEntry>,
}

impl ModelDescription {
    pub fn new<S: Into<String>>(agents: impl IntoIterator<Item = S>) -> Self {
        ModelDescription {
            agents: agents.into_iter().map(Into::into).collect(),
            moments: vec![],
            order: vec![],
            choice: vec![],
            act: vec![],
            evidence: vec![],
            r: RelationSpec::order(),
            re: None,
            valuation: vec![],
        }
    }

    pub fn build(&self) -> Result<FiniteJstitModel, ModelError> {
        FiniteJstitModel::from_description(self)
    }
}

#[derive(Clone, Debug)]
struct Partition {
    blocks: Vec<Vec<HistoryId>>,
    cell_of: HashMap<HistoryId, usize>,
}

#[derive(Clone, Debug)]
pub struct FiniteJstitModel {
    agents: AgentSet,
    names: Vec<String>,
    index: HashMap<String, MomentId>,
    le: Vec<Vec<bool>>,
    leaves: Vec<MomentId>,
    leaf_history: HashMap<MomentId, HistoryId>,
    members: Vec<Vec<MomentId>>,
    through: Vec<Vec<HistoryId>>,
    choice: Vec<Vec<Partition>>,
    act: HashMap<(MomentId, HistoryId), BTreeSet<Term>>,
    r_spec: RelationSpec,
    re_spec: Option<RelationSpec>,
    r: Vec<Vec<bool>>,
    r_e: Vec<Vec<bool>>,
    evidence: Evidence,
    valuation: HashMap<String, HashSet<(MomentId, HistoryId)>>,
    // derived
    act_moment: Vec<BTreeSet<Term>>,
    act_cell: Vec<Vec<Vec<BTreeSet<Term>>>>,
    pairs: Vec<(MomentId, HistoryId)>,
    pair_offset: Vec<usize>,
}

static EMPTY_TERMS: BTreeSet<Term> = BTreeSet::new();

fn close_preorder(m: &mut [Vec<bool>]) {
    let n = m.len();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
}

impl FiniteJstitModel {
    pub fn from_description(d: &ModelDescription) -> Result<Self, ModelError> {
        let agents = AgentSet::new(d.agents.iter().cloned())?;
        if d.moments.is_empty() {
            return Err(ModelError::NoMoments);
        }
        let mut index = HashMap::new();
        for (i, name) in d.moments.iter().enumerate() {
            if index.insert(name.clone(), MomentId(i)).is_some() {
                return Err(ModelError::DuplicateMoment(name.clone()));
            }
        }
        let n = d.moments.len();
        let lookup = |name: &str| -> Result<MomentId, ModelError> {
            index.get(name).copied().ok_or_else(|| ModelError::UnknownMoment(name.to_string()))
        };
        let agent_index = |name: &str| -> Result<usize, ModelError> {
            agents
                .index_of(&Agent::new(name))
                .ok_or_else(|| ModelError::UnknownAgent(name.to_string()))
        };

        let mut le = vec![vec![false; n]; n];
        for (a, b) in &d.order {
            let (a, b) = (lookup(a)?, lookup(b)?);
            le[a.0][b.0] = true;
        }
        close_preorder(&mut le);
        for a in 0..n {
            for b in (a + 1)..n {
                if le[a][b] && le[b][a] {
                    return Err(ModelError::OrderCycle(d.moments[a].clone(), d.moments[b].clone()));
                }
            }
        }

        let leaves: Vec<MomentId> = (0..n)
            .filter(|&a| (0..n).all(|b| b == a || !le[a][b]))
            .map(MomentId)
            .collect();
        let leaf_history: HashMap<MomentId, HistoryId> =
            leaves.iter().enumerate().map(|(h, &l)| (l, HistoryId(h))).collect();
        let members: Vec<Vec<MomentId>> = leaves
            .iter()
            .map(|l| (0..n).filter(|&m| le[m][l.0]).map(MomentId).collect())
            .collect();
        let through: Vec<Vec<HistoryId>> = (0..n)
            .map(|m| {
                leaves
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| le[m][l.0])
                    .map(|(h, _)| HistoryId(h))
                    .collect()
            })
            .collect();

        let history_above = |moment: MomentId, leaf: &str| -> Result<HistoryId, ModelError> {
            let l = lookup(leaf)?;
            match leaf_history.get(&l) {
                Some(&h) if le[moment.0][l.0] => Ok(h),
                _ => Err(ModelError::NotALeafAbove {
                    moment: d.moments[moment.0].clone(),
                    leaf: leaf.to_string(),
                }),
            }
        };

        let trivial = |m: usize| Partition {
            blocks: vec![through[m].clone()],
            cell_of: through[m].iter().map(|&h| (h, 0)).collect(),
        };
        let mut choice: Vec<Vec<Partition>> =
            (0..n).map(|m| (0..agents.len()).map(|_| trivial(m)).collect()).collect();
        let mut seen_choice = HashSet::new();
        for entry in &d.choice {
            let m = lookup(&entry.moment)?;
            let j = agent_index(&entry.agent)?;
            if !seen_choice.insert((m, j)) {
                return Err(ModelError::DuplicateChoice {
                    moment: entry.moment.clone(),
                    agent: entry.agent.clone(),
                });
            }
            let block_err = |message: String| ModelError::ChoiceBlock {
                moment: entry.moment.clone(),
                agent: entry.agent.clone(),
                message,
            };
            let mut cell_of = HashMap::new();
            let mut blocks = Vec::new();
            for (bi, block) in entry.blocks.iter().enumerate() {
                if block.is_empty() {
                    return Err(block_err("empty block".into()));
                }
                let mut hs = Vec::new();
                for leaf in block {
                    let h = history_above(m, leaf)
                        .map_err(|_| block_err(format!("'{leaf}' is not a leaf above the moment")))?;
                    if cell_of.insert(h, bi).is_some() {
                        return Err(block_err(format!("'{leaf}' appears in two blocks")));
                    }
                    hs.push(h);
                }
                hs.sort();
                blocks.push(hs);
            }
            if let Some(h) = through[m.0].iter().find(|h| !cell_of.contains_key(h)) {
                return Err(block_err(format!(
                    "history '{}' is not covered",
                    d.moments[leaves[h.0].0]
                )));
            }
            choice[m.0][j] = Partition { blocks, cell_of };
        }

        let mut act: HashMap<(MomentId, HistoryId), BTreeSet<Term>> = HashMap::new();
        for entry in &d.act {
            let m = lookup(&entry.moment)?;
            let h = history_above(m, &entry.leaf)?;
            act.entry((m, h)).or_default().extend(entry.terms.iter().cloned());
        }
        act.retain(|_, s| !s.is_empty());

        let relation = |spec: &RelationSpec, r: Option<&Vec<Vec<bool>>>| -> Result<Vec<Vec<bool>>, ModelError> {
            let mut rel = match (spec.base, r) {
                (RelationBase::Identity, _) => vec![vec![false; n]; n],
                (RelationBase::Order, _) => le.clone(),
                (RelationBase::R, Some(r)) => r.clone(),
                (RelationBase::R, None) => {
                    return Err(ModelError::Syntax { line: 0, message: "R cannot be based on itself".into() })
                }
            };
            for (a, b) in &spec.pairs {
                let (a, b) = (lookup(a)?, lookup(b)?);
                rel[a.0][b.0] = true;
            }
            close_preorder(&mut rel);
            Ok(rel)
        };
        let r = relation(&d.r, None)?;
        let r_e = match &d.re {
            None => r.clone(),
            Some(spec) => relation(spec, Some(&r))?,
        };

        let mut ev = Evidence::default();
        for entry in &d.evidence {
            let m = entry.moment.as_deref().map(lookup).transpose()?;
            ev.add(m, entry.term.clone(), &entry.set);
        }

        let mut valuation: HashMap<String, HashSet<(MomentId, HistoryId)>> = HashMap::new();
        for entry in &d.valuation {
            let slot = valuation.entry(entry.atom.clone()).or_default();
            match &entry.points {
                ValuationPoints::All => {
                    for m in 0..n {
                        slot.extend(through[m].iter().map(|&h| (MomentId(m), h)));
                    }
                }
                ValuationPoints::Pairs(ps) => {
                    for (m, leaf) in ps {
                        let m = lookup(m)?;
                        slot.insert((m, history_above(m, leaf)?));
                    }
                }
            }
        }

        let mut model = FiniteJstitModel {
            agents,
            names: d.moments.clone(),
            index,
            le,
            leaves,
            leaf_history,
            members,
            through,
            choice,
            act,
            r_spec: d.r.clone(),
            re_spec: d.re.clone(),
            r,
            r_e,
            evidence: ev,
            valuation,
            act_moment: vec![],
            act_cell: vec![],
            pairs: vec![],
            pair_offset: vec![],
        };
        model.derive();
        Ok(model)
    }

    fn derive(&mut self) {
        let n = self.names.len();
        let intersect = |sets: &mut dyn Iterator<Item = &BTreeSet<Term>>| -> BTreeSet<Term> {
            let mut acc: Option<BTreeSet<Term>> = None;
            for s in sets {
                acc = Some(match acc {
                    None => s.clone(),
                    Some(a) => a.intersection(s).cloned().collect(),
                });
            }
            acc.unwrap_or_default()
        };
        self.act_moment = (0..n)
            .map(|m| intersect(&mut self.through[m].iter().map(|&h| self.act(MomentId(m), h))))
            .collect();
        self.act_cell = (0..n)
            .map(|m| {
                self.choice[m]
                    .iter()
                    .map(|p| {
                        p.blocks
                            .iter()
                            .map(|b| intersect(&mut b.iter().map(|&h| self.act(MomentId(m), h))))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        self.pairs.clear();
        self.pair_offset.clear();
        for m in 0..n {
            self.pair_offset.push(self.pairs.len());
            self.pairs.extend(self.through[m].iter().map(|&h| (MomentId(m), h)));
        }
    }

    pub fn agents(&self) -> &AgentSet {
        &self.agents
    }

    pub fn agent_index(&self, agent: &Agent) -> Option<usize> {
        self.agents.index_of(agent)
    }

    pub fn moment_count(&self) -> usize {
        self.names.len()
    }

    pub fn moments(&self) -> impl Iterator<Item = MomentId> + '_ {
        (0..self.names.len()).map(MomentId)
    }

    pub fn moment_name(&self, m: MomentId) -> &str {
        &self.names[m.0]
    }

    pub fn moment_id(&self, name: &str) -> Option<MomentId> {
        self.index.get(name).copied()
    }

    /// `a ⊴ b`.
    pub fn le(&self, a: MomentId, b: MomentId) -> bool {
        self.le[a.0][b.0]
    }

    /// `a ◁ b`.
    pub fn lt(&self, a: MomentId, b: MomentId) -> bool {
        a != b && self.le[a.0][b.0]
    }

    pub fn leaves(&self) -> &[MomentId] {
        &self.leaves
    }

    pub fn history_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn histories(&self) -> impl Iterator<Item = HistoryId> + '_ {
        (0..self.leaves.len()).map(HistoryId)
    }

    pub fn history_leaf(&self, h: HistoryId) -> MomentId {
        self.leaves[h.0]
    }

    /// The history is named after its leaf.
    pub fn history_name(&self, h: HistoryId) -> &str {
        self.moment_name(self.leaves[h.0])
    }

    pub fn history_of_leaf(&self, leaf: MomentId) -> Option<HistoryId> {
        self.leaf_history.get(&leaf).copied()
    }

    /// Moments on the history, i.e. everything below its leaf.
    pub fn history_members(&self, h: HistoryId) -> &[MomentId] {
        &self.members[h.0]
    }

    /// `H_m`, sorted.
    pub fn histories_through(&self, m: MomentId) -> &[HistoryId] {
        &self.through[m.0]
    }

    pub fn passes_through(&self, h: HistoryId, m: MomentId) -> bool {
        self.le[m.0][self.leaves[h.0].0]
    }

    /// `h ≈_m g`: both histories pass through some moment strictly above `m`.
    pub fn undivided(&self, m: MomentId, h: HistoryId, g: HistoryId) -> bool {
        self.moments()
            .any(|m2| self.lt(m, m2) && self.passes_through(h, m2) && self.passes_through(g, m2))
    }

    pub fn choice_blocks(&self, m: MomentId, agent: usize) -> &[Vec<HistoryId>] {
        &self.choice[m.0][agent].blocks
    }

    /// `Choice^m_j(h)`.
    pub fn choice_cell(&self, m: MomentId, h: HistoryId, agent: usize) -> &[HistoryId] {
        let p = &self.choice[m.0][agent];
        &p.blocks[p.cell_of[&h]]
    }

    pub fn act(&self, m: MomentId, h: HistoryId) -> &BTreeSet<Term> {
        self.act.get(&(m, h)).unwrap_or(&EMPTY_TERMS)
    }

    /// `Act_m`.
    pub fn act_moment(&self, m: MomentId) -> &BTreeSet<Term> {
        &self.act_moment[m.0]
    }

    /// `Act_(m,h,j)`.
    pub fn act_cell(&self, m: MomentId, h: HistoryId, agent: usize) -> &BTreeSet<Term> {
        let p = &self.choice[m.0][agent];
        &self.act_cell[m.0][agent][p.cell_of[&h]]
    }

    pub fn r(&self, a: MomentId, b: MomentId) -> bool {
        self.r[a.0][b.0]
    }

    pub fn r_e(&self, a: MomentId, b: MomentId) -> bool {
        self.r_e[a.0][b.0]
    }

    pub fn is_unirelational(&self) -> bool {
        self.r == self.r_e
    }

    pub fn evidence(&self) -> &Evidence {
        &self.evidence
    }

    pub fn holds_atom(&self, atom: &str, m: MomentId, h: HistoryId) -> bool {
        self.valuation.get(atom).is_some_and(|s| s.contains(&(m, h)))
    }

    /// All moment-history pairs, grouped by moment.
    pub fn pairs(&self) -> &[(MomentId, HistoryId)] {
        &self.pairs
    }

    /// Position of `(m, h)` in [`Self::pairs`].
    pub fn pair_index(&self, m: MomentId, h: HistoryId) -> Option<usize> {
        self.through[m.0].binary_search(&h).ok().map(|i| self.pair_offset[m.0] + i)
    }

    /// Terms occurring anywhere in `Act`.
    pub fn act_terms(&self) -> BTreeSet<Term> {
        self.act.values().flat_map(|s| s.iter().cloned()).collect()
    }

    pub fn describe(&self) -> ModelDescription {
        let name = |m: MomentId| self.names[m.0].clone();
        let mut order = Vec::new();
        for a in self.moments() {
            for b in self.moments() {
                if self.lt(a, b) && !self.moments().any(|c| self.lt(a, c) && self.lt(c, b)) {
                    order.push((name(a), name(b)));
                }
            }
        }
        let mut choice = Vec::new();
        for m in self.moments() {
            for (j, agent) in self.agents.iter().enumerate() {
                let blocks = self.choice_blocks(m, j);
                if blocks.len() > 1 {
                    choice.push(ChoiceEntry {
                        moment: name(m),
                        agent: agent.0.clone(),
                        blocks: blocks
                            .iter()
                            .map(|b| b.iter().map(|&h| self.history_name(h).to_string()).collect())
                            .collect(),
                    });
                }
            }
        }
        let mut act_keys: Vec<_> = self.act.keys().copied().collect();
        act_keys.sort();
        let act = act_keys
            .into_iter()
            .map(|(m, h)| ActEntry {
                moment: name(m),
                leaf: self.history_name(h).to_string(),
                terms: self.act(m, h).iter().cloned().collect(),
            })
            .collect();
        let evidence = self
            .evidence
            .entries()
            .into_iter()
            .map(|(m, t, set)| EvidenceEntry { moment: m.map(name), term: t, set })
            .collect();
        let mut atoms: Vec<_> = self.valuation.keys().cloned().collect();
        atoms.sort();
        let valuation = atoms
            .into_iter()
            .map(|atom| {
                let mut pts: Vec<_> = self.valuation[&atom].iter().copied().collect();
                pts.sort();
                let points = if pts.len() == self.pairs.len() {
                    ValuationPoints::All
                } else {
                    ValuationPoints::Pairs(
                        pts.into_iter()
                            .map(|(m, h)| (name(m), self.history_name(h).to_string()))
                            .collect(),
                    )
                };
                ValuationEntry { atom, points }
            })
            .collect();
        ModelDescription {
            agents: self.agents.iter().map(|a| a.0.clone()).collect(),
            moments: self.names.clone(),
            order,
            choice,
            act,
            evidence,
            r: self.r_spec.clone(),
            re: self.re_spec.clone(),
            valuation,
        }
    }
}

impl fmt::Display for FiniteJstitModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::emit(&self.describe()))
    }
}

/// `(Act_m, Act_(m,h,j))` for the given moment, history and agent.
pub fn act_aggregates(
    model: &FiniteJstitModel,
    m: MomentId,
    h: HistoryId,
    agent: &Agent,
) -> Result<(BTreeSet<Term>, BTreeSet<Term>), QueryError> {
    model.check_pair(m, h)?;
    let j = model.agent_index(agent).ok_or_else(|| QueryError::UnknownAgent(agent.0.clone()))?;
    Ok((model.act_moment(m).clone(), model.act_cell(m, h, j).clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("unknown moment '{0}'")]
    UnknownMoment(String),
    #[error("'{0}' is not a leaf")]
    UnknownHistory(String),
    #[error("history '{history}' does not pass through '{moment}'")]
    NotThrough { moment: String, history: String },
    #[error("unknown agent '{0}'")]
    UnknownAgent(String),
}

impl FiniteJstitModel {
    pub(crate) fn check_pair(&self, m: MomentId, h: HistoryId) -> Result<(), QueryError> {
        if m.0 >= self.names.len() {
            return Err(QueryError::UnknownMoment(format!("#{}", m.0)));
        }
        if h.0 >= self.leaves.len() {
            return Err(QueryError::UnknownHistory(format!("#{}", h.0)));
        }
        if !self.passes_through(h, m) {
            return Err(QueryError::NotThrough {
                moment: self.moment_name(m).to_string(),
                history: self.history_name(h).to_string(),
            });
        }
        Ok(())
    }

    /// Resolves a `(moment name, leaf name)` address.
    pub fn resolve_pair(&self, moment: &str, leaf: &str) -> Result<(MomentId, HistoryId), QueryError> {
        let m = self.moment_id(moment).ok_or_else(|| QueryError::UnknownMoment(moment.to_string()))?;
        let l = self.moment_id(leaf).ok_or_else(|| QueryError::UnknownMoment(leaf.to_string()))?;
        let h = self.history_of_leaf(l).ok_or_else(|| QueryError::UnknownHistory(leaf.to_string()))?;
        self.check_pair(m, h)?;
        Ok((m, h))
    }

    /// `H_m` by name.
    pub fn histories_through_named(&self, moment: &str) -> Result<&[HistoryId], QueryError> {
        let m = self.moment_id(moment).ok_or_else(|| QueryError::UnknownMoment(moment.to_string()))?;
        Ok(self.histories_through(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fork() -> FiniteJstitModel {
        load_model(
            "agents: j\nmoments: r l1 l2\norder: r<l1 r<l2\nact: r/l1 = x\nval: p @ r/l1\n",
        )
        .unwrap()
    }

    #[test]
    fn single_moment_has_one_history() {
        let m = load_model("agents: j\nmoments: m\n").unwrap();
        assert_eq!(m.history_count(), 1);
        assert_eq!(m.pairs().len(), 1);
    }

    #[test]
    fn fork_has_two_histories() {
        let m = fork();
        assert_eq!(m.history_count(), 2);
        let r = m.moment_id("r").unwrap();
        assert_eq!(m.histories_through(r).len(), 2);
        let l1 = m.moment_id("l1").unwrap();
        assert_eq!(m.histories_through(l1), &[m.history_of_leaf(l1).unwrap()]);
    }

    #[test]
    fn chain_is_one_history() {
        let m = load_model("agents: j\nmoments: a b c\norder: a<b b<c\n").unwrap();
        assert_eq!(m.history_count(), 1);
        assert_eq!(m.history_members(HistoryId(0)).len(), 3);
    }

    #[test]
    fn aggregates_on_fork() {
        let m = fork();
        let (r, h1) = m.resolve_pair("r", "l1").unwrap();
        let (act_m, act_cell) = act_aggregates(&m, r, h1, &Agent::new("j")).unwrap();
        assert!(act_m.is_empty());
        assert!(act_cell.is_empty(), "trivial choice intersects over both histories");
        let (l1, _) = m.resolve_pair("l1", "l1").unwrap();
        let (act_m, _) = act_aggregates(&m, l1, h1, &Agent::new("j")).unwrap();
        assert!(act_m.is_empty());
        assert!(act_aggregates(&m, r, h1, &Agent::new("k")).is_err());
    }

    #[test]
    fn single_history_aggregate_is_act() {
        let m = load_model("agents: j\nmoments: a\nact: a/a = x y\n").unwrap();
        let (a, h) = m.resolve_pair("a", "a").unwrap();
        let (act_m, _) = act_aggregates(&m, a, h, &Agent::new("j")).unwrap();
        assert_eq!(&act_m, m.act(a, h));
        assert_eq!(act_m.len(), 2);
    }

    #[test]
    fn describe_round_trips() {
        let m = fork();
        let again = m.describe().build().unwrap();
        assert_eq!(m.describe(), again.describe());
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            load_model("agents: j\nmoments: a b\norder: a<b b<a\n"),
            Err(ModelError::OrderCycle(..))
        ));
        assert!(matches!(
            load_model("agents: j\nmoments: r l1 l2\norder: r<l1 r<l2\nact: r/r = x\n"),
            Err(ModelError::NotALeafAbove { .. })
        ));
        assert!(matches!(
            load_model("agents: j\nmoments: r l1 l2\norder: r<l1 r<l2\nchoice: r j : {l1}\n"),
            Err(ModelError::ChoiceBlock { .. })
        ));
        assert!(matches!(
            load_model("agents: j\nmoments: r l1 l2\norder: r<l1 r<l2\nchoice: r j : {l1 r} {l2}\n"),
            Err(ModelError::ChoiceBlock { .. })
        ));
        assert!(matches!(
            load_model("agents: j\nmoments: r\norder: r<q\n"),
            Err(ModelError::UnknownMoment(_))
        ));
        assert!(matches!(
            load_model("agents: j\nmoments: r\nchoice: r k : {r}\n"),
            Err(ModelError::UnknownAgent(_))
        ));
    }

    #[test]
    fn unknown_addresses() {
        let m = fork();
        assert!(m.resolve_pair("l1", "l2").is_err());
        assert!(m.resolve_pair("r", "r").is_err());
        assert!(m.histories_through_named("zz").is_err());
    }
}
