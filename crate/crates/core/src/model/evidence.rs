use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::{Formula, Term};

use super::MomentId;

/// The value of the admissible evidence function at one (moment, term).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EvidenceSet {
    /// Every formula is admissible evidence.
    Everything,
    Finite(BTreeSet<Formula>),
}

impl Default for EvidenceSet {
    fn default() -> Self {
        EvidenceSet::Finite(BTreeSet::new())
    }
}

impl EvidenceSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_formulas<I: IntoIterator<Item = Formula>>(it: I) -> Self {
        EvidenceSet::Finite(it.into_iter().collect())
    }

    pub fn contains(&self, f: &Formula) -> bool {
        match self {
            EvidenceSet::Everything => true,
            EvidenceSet::Finite(s) => s.contains(f),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, EvidenceSet::Finite(s) if s.is_empty())
    }

    pub fn is_everything(&self) -> bool {
        matches!(self, EvidenceSet::Everything)
    }

    pub fn finite(&self) -> Option<&BTreeSet<Formula>> {
        match self {
            EvidenceSet::Everything => None,
            EvidenceSet::Finite(s) => Some(s),
        }
    }

    pub fn is_subset(&self, other: &EvidenceSet) -> bool {
        match (self, other) {
            (_, EvidenceSet::Everything) => true,
            (EvidenceSet::Everything, EvidenceSet::Finite(_)) => false,
            (EvidenceSet::Finite(a), EvidenceSet::Finite(b)) => a.is_subset(b),
        }
    }

    pub fn insert(&mut self, f: Formula) {
        if let EvidenceSet::Finite(s) = self {
            s.insert(f);
        }
    }

    pub fn union_with(&mut self, other: &EvidenceSet) {
        match (&mut *self, other) {
            (EvidenceSet::Everything, _) => {}
            (_, EvidenceSet::Everything) => *self = EvidenceSet::Everything,
            (EvidenceSet::Finite(a), EvidenceSet::Finite(b)) => a.extend(b.iter().cloned()),
        }
    }
}

/// Intensional evidence function. The value at `(m, t)` is the union of every
/// entry that matches: the global entry, the entry for moment `m` with any
/// term, the entry for term `t` at any moment, and the exact entry.
/// Unlisted combinations are empty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Evidence {
    pub(crate) global: EvidenceSet,
    pub(crate) by_moment: BTreeMap<MomentId, EvidenceSet>,
    pub(crate) by_term: BTreeMap<Term, EvidenceSet>,
    pub(crate) exact: BTreeMap<(MomentId, Term), EvidenceSet>,
}

impl Evidence {
    pub fn everything() -> Self {
        Evidence { global: EvidenceSet::Everything, ..Default::default() }
    }

    pub fn add(&mut self, moment: Option<MomentId>, term: Option<Term>, set: &EvidenceSet) {
        let slot = match (moment, term) {
            (None, None) => &mut self.global,
            (Some(m), None) => self.by_moment.entry(m).or_default(),
            (None, Some(t)) => self.by_term.entry(t).or_default(),
            (Some(m), Some(t)) => self.exact.entry((m, t)).or_default(),
        };
        slot.union_with(set);
    }

    pub fn contains(&self, m: MomentId, t: &Term, f: &Formula) -> bool {
        self.global.contains(f)
            || self.by_moment.get(&m).is_some_and(|s| s.contains(f))
            || self.by_term.get(t).is_some_and(|s| s.contains(f))
            || self.exact.get(&(m, t.clone())).is_some_and(|s| s.contains(f))
    }

    pub fn get(&self, m: MomentId, t: &Term) -> EvidenceSet {
        let mut out = self.global.clone();
        if let Some(s) = self.by_moment.get(&m) {
            out.union_with(s);
        }
        if let Some(s) = self.by_term.get(t) {
            out.union_with(s);
        }
        if let Some(s) = self.exact.get(&(m, t.clone())) {
            out.union_with(s);
        }
        out
    }

    /// The value at `m` for a term that has no entry of its own.
    pub fn get_unlisted(&self, m: MomentId) -> EvidenceSet {
        let mut out = self.global.clone();
        if let Some(s) = self.by_moment.get(&m) {
            out.union_with(s);
        }
        out
    }

    /// Terms that key some entry.
    pub fn keyed_terms(&self) -> BTreeSet<Term> {
        self.by_term.keys().chain(self.exact.keys().map(|(_, t)| t)).cloned().collect()
    }

    /// Formulas mentioned in finite entries.
    pub fn mentioned_formulas(&self) -> BTreeSet<Formula> {
        std::iter::once(&self.global)
            .chain(self.by_moment.values())
            .chain(self.by_term.values())
            .chain(self.exact.values())
            .filter_map(EvidenceSet::finite)
            .flat_map(|s| s.iter().cloned())
            .collect()
    }

    pub(crate) fn entries(&self) -> Vec<(Option<MomentId>, Option<Term>, EvidenceSet)> {
        let mut out = Vec::new();
        if !self.global.is_empty() {
            out.push((None, None, self.global.clone()));
        }
        for (m, s) in &self.by_moment {
            out.push((Some(*m), None, s.clone()));
        }
        for (t, s) in &self.by_term {
            out.push((None, Some(t.clone()), s.clone()));
        }
        for ((m, t), s) in &self.exact {
            out.push((Some(*m), Some(t.clone()), s.clone()));
        }
        out
    }
}
