//! The jstit model constraints as a decision procedure on finite models.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{Formula, Term};

use super::{EvidenceSet, FiniteJstitModel, HistoryId, MomentId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    HistoricalConnection,
    NoBackwardBranching,
    NoChoiceBetweenUndividedHistories,
    IndependenceOfAgents,
    MonotonicityOfEvidence,
    EvidenceClosure,
    ExpansionOfPresentedProofs,
    NoNewProofsGuaranteed,
    NewProofMakesHistoriesDivide,
    FutureAlwaysMatters,
    EpistemicTransparency,
    /// `R ⊆ R_e`.
    RWithinRe,
}

impl Constraint {
    pub const ALL: [Constraint; 12] = [
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
        Constraint::RWithinRe,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            Constraint::HistoricalConnection => "historical-connection",
            Constraint::NoBackwardBranching => "no-backward-branching",
            Constraint::NoChoiceBetweenUndividedHistories => "no-choice-between-undivided-histories",
            Constraint::IndependenceOfAgents => "independence-of-agents",
            Constraint::MonotonicityOfEvidence => "monotonicity-of-evidence",
            Constraint::EvidenceClosure => "evidence-closure",
            Constraint::ExpansionOfPresentedProofs => "expansion-of-presented-proofs",
            Constraint::NoNewProofsGuaranteed => "no-new-proofs-guaranteed",
            Constraint::NewProofMakesHistoriesDivide => "new-proof-makes-histories-divide",
            Constraint::FutureAlwaysMatters => "future-always-matters",
            Constraint::EpistemicTransparency => "epistemic-transparency",
            Constraint::RWithinRe => "r-within-re",
        }
    }

    pub fn from_slug(s: &str) -> Option<Constraint> {
        Constraint::ALL.into_iter().find(|c| c.slug() == s)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub constraint: Constraint,
    pub moments: Vec<String>,
    /// Histories, named by their leaves.
    pub histories: Vec<String>,
    pub agents: Vec<String>,
    pub terms: Vec<Term>,
    pub explanation: String,
}

impl Violation {
    /// `constraint @ moments`, the short form used in reports.
    pub fn headline(&self) -> String {
        if self.moments.is_empty() {
            self.constraint.slug().to_string()
        } else {
            format!("{} @ {}", self.constraint, self.moments.join(", "))
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.headline(), self.explanation)
    }
}

/// Violations found by [`validate`]. Evidence monotonicity is checked
/// exactly; the closure conditions are checked on the terms the model
/// mentions (act, evidence keys and their subterms) and only where the
/// combined term is itself mentioned, so a clean report means the finite
/// data extends to some fully closed evidence function.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintReport {
    pub violations: Vec<Violation>,
}

impl ConstraintReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn constraints(&self) -> BTreeSet<Constraint> {
        self.violations.iter().map(|v| v.constraint).collect()
    }

    pub fn mentions(&self, c: Constraint) -> bool {
        self.violations.iter().any(|v| v.constraint == c)
    }
}

impl fmt::Display for ConstraintReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return writeln!(f, "ok: all constraints hold");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

struct Collector<'a> {
    model: &'a FiniteJstitModel,
    out: Vec<Violation>,
}

impl<'a> Collector<'a> {
    fn push(
        &mut self,
        constraint: Constraint,
        moments: &[MomentId],
        histories: &[HistoryId],
        agents: &[usize],
        terms: Vec<Term>,
        explanation: String,
    ) {
        let m = self.model;
        self.out.push(Violation {
            constraint,
            moments: moments.iter().map(|&x| m.moment_name(x).to_string()).collect(),
            histories: histories.iter().map(|&h| m.history_name(h).to_string()).collect(),
            agents: agents.iter().map(|&j| m.agents().as_slice()[j].0.clone()).collect(),
            terms,
            explanation,
        });
    }
}

fn show_terms<'t>(ts: impl IntoIterator<Item = &'t Term>) -> String {
    let v: Vec<String> = ts.into_iter().map(|t| t.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

pub fn validate(model: &FiniteJstitModel) -> ConstraintReport {
    let mut c = Collector { model, out: Vec::new() };
    tree_shape(&mut c);
    choice(&mut c);
    evidence(&mut c);
    act(&mut c);
    relations(&mut c);
    ConstraintReport { violations: c.out }
}

fn tree_shape(c: &mut Collector<'_>) {
    let m = c.model;
    let moments: Vec<MomentId> = m.moments().collect();
    for (i, &a) in moments.iter().enumerate() {
        for &b in &moments[i + 1..] {
            if !moments.iter().any(|&x| m.le(x, a) && m.le(x, b)) {
                c.push(
                    Constraint::HistoricalConnection,
                    &[a, b],
                    &[],
                    &[],
                    vec![],
                    "no common lower bound".into(),
                );
            }
        }
    }
    for &top in &moments {
        let below: Vec<MomentId> = moments.iter().copied().filter(|&x| m.le(x, top)).collect();
        for (i, &a) in below.iter().enumerate() {
            for &b in &below[i + 1..] {
                if !m.le(a, b) && !m.le(b, a) {
                    c.push(
                        Constraint::NoBackwardBranching,
                        &[a, b, top],
                        &[],
                        &[],
                        vec![],
                        format!("incomparable moments both below {}", m.moment_name(top)),
                    );
                }
            }
        }
    }
}

fn choice(c: &mut Collector<'_>) {
    let m = c.model;
    let n_agents = m.agents().len();
    for mo in m.moments() {
        let hs = m.histories_through(mo);
        for j in 0..n_agents {
            for (i, &h) in hs.iter().enumerate() {
                for &g in &hs[i + 1..] {
                    if m.undivided(mo, h, g) && m.choice_cell(mo, h, j) != m.choice_cell(mo, g, j) {
                        c.push(
                            Constraint::NoChoiceBetweenUndividedHistories,
                            &[mo],
                            &[h, g],
                            &[j],
                            vec![],
                            "undivided histories lie in different choice cells".into(),
                        );
                    }
                }
            }
        }
        // Depth-first over selector functions, one block per agent.
        let mut stack: Vec<usize> = Vec::new();
        if let Some(sel) = empty_selection(m, mo, &mut stack, hs.to_vec()) {
            let agents: Vec<usize> = (0..n_agents).collect();
            let blocks: Vec<String> = sel
                .iter()
                .enumerate()
                .map(|(j, &b)| {
                    let names: Vec<&str> =
                        m.choice_blocks(mo, j)[b].iter().map(|&h| m.history_name(h)).collect();
                    format!("{}:{{{}}}", m.agents().as_slice()[j], names.join(" "))
                })
                .collect();
            c.push(
                Constraint::IndependenceOfAgents,
                &[mo],
                &[],
                &agents,
                vec![],
                format!("choices {} have empty intersection", blocks.join(" ")),
            );
        }
    }
}

fn empty_selection(
    m: &FiniteJstitModel,
    mo: MomentId,
    chosen: &mut Vec<usize>,
    remaining: Vec<HistoryId>,
) -> Option<Vec<usize>> {
    let j = chosen.len();
    if j == m.agents().len() {
        return remaining.is_empty().then(|| chosen.clone());
    }
    for (b, block) in m.choice_blocks(mo, j).iter().enumerate() {
        let next: Vec<HistoryId> = remaining.iter().copied().filter(|h| block.contains(h)).collect();
        chosen.push(b);
        if next.is_empty() {
            // Every extension stays empty; pad with first blocks.
            let mut sel = chosen.clone();
            sel.resize(m.agents().len(), 0);
            chosen.pop();
            return Some(sel);
        }
        let found = empty_selection(m, mo, chosen, next);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Terms the model mentions, closed under subterms.
pub(crate) fn term_universe(model: &FiniteJstitModel) -> BTreeSet<Term> {
    let mut u = BTreeSet::new();
    for t in model.act_terms().into_iter().chain(model.evidence().keyed_terms()) {
        for s in t.subterms() {
            u.insert(s.clone());
        }
    }
    u
}

fn evidence(c: &mut Collector<'_>) {
    let m = c.model;
    let ev = m.evidence();
    let keyed = ev.keyed_terms();
    for a in m.moments() {
        for b in m.moments() {
            if a == b || !m.r_e(a, b) {
                continue;
            }
            for t in &keyed {
                if !ev.get(a, t).is_subset(&ev.get(b, t)) {
                    c.push(
                        Constraint::MonotonicityOfEvidence,
                        &[a, b],
                        &[],
                        &[],
                        vec![t.clone()],
                        format!("evidence for {t} shrinks along R_e"),
                    );
                }
            }
            if !ev.get_unlisted(a).is_subset(&ev.get_unlisted(b)) {
                c.push(
                    Constraint::MonotonicityOfEvidence,
                    &[a, b],
                    &[],
                    &[],
                    vec![],
                    "evidence for unlisted terms shrinks along R_e".into(),
                );
            }
        }
    }

    let u = term_universe(m);
    for mo in m.moments() {
        for s in &u {
            for t in &u {
                let app = Term::app(s.clone(), t.clone());
                if u.contains(&app) {
                    if let Some(why) = application_gap(&ev.get(mo, s), &ev.get(mo, t), &ev.get(mo, &app)) {
                        c.push(Constraint::EvidenceClosure, &[mo], &[], &[], vec![s.clone(), t.clone()], why);
                    }
                }
                let sum = Term::sum(s.clone(), t.clone());
                if u.contains(&sum) {
                    let target = ev.get(mo, &sum);
                    if !ev.get(mo, s).is_subset(&target) || !ev.get(mo, t).is_subset(&target) {
                        c.push(
                            Constraint::EvidenceClosure,
                            &[mo],
                            &[],
                            &[],
                            vec![s.clone(), t.clone()],
                            format!("E({sum}) does not contain E({s}) and E({t})"),
                        );
                    }
                }
            }
            let bang = Term::check(s.clone());
            if u.contains(&bang) {
                if let Some(why) = check_gap(s, &ev.get(mo, s), &ev.get(mo, &bang)) {
                    c.push(Constraint::EvidenceClosure, &[mo], &[], &[], vec![s.clone()], why);
                }
            }
        }
    }
}

fn application_gap(es: &EvidenceSet, et: &EvidenceSet, target: &EvidenceSet) -> Option<String> {
    if target.is_everything() || et.is_empty() {
        return None;
    }
    match es {
        EvidenceSet::Everything => Some("application of an unrestricted term needs unrestricted evidence".into()),
        EvidenceSet::Finite(fs) => fs.iter().find_map(|f| match f {
            Formula::Imp(a, b) if et.contains(a) && !target.contains(b) => {
                Some(format!("application misses {b}"))
            }
            _ => None,
        }),
    }
}

fn check_gap(t: &Term, et: &EvidenceSet, target: &EvidenceSet) -> Option<String> {
    if target.is_everything() || et.is_empty() {
        return None;
    }
    match et {
        EvidenceSet::Everything => Some(format!("!{t} needs unrestricted evidence")),
        EvidenceSet::Finite(fs) => fs.iter().find_map(|a| {
            let need = Formula::just(t.clone(), a.clone());
            (!target.contains(&need)).then(|| format!("proof check misses {need}"))
        }),
    }
}

fn act(c: &mut Collector<'_>) {
    let m = c.model;
    for mo in m.moments() {
        let hs = m.histories_through(mo);
        let mut earlier: BTreeSet<&Term> = BTreeSet::new();
        for &h in hs {
            for prev in m.moments().filter(|&p| m.lt(p, mo)) {
                let before = m.act(prev, h);
                earlier.extend(before.iter());
                let lost: Vec<Term> = before.difference(m.act(mo, h)).cloned().collect();
                if !lost.is_empty() {
                    let msg = format!("{} presented at {} but not later", show_terms(&lost), m.moment_name(prev));
                    c.push(Constraint::ExpansionOfPresentedProofs, &[prev, mo], &[h], &[], lost, msg);
                }
            }
        }
        let fresh: Vec<Term> =
            m.act_moment(mo).iter().filter(|t| !earlier.contains(t)).cloned().collect();
        if !fresh.is_empty() {
            let msg = format!("Act_m contains {} which no earlier moment presents", show_terms(&fresh));
            c.push(Constraint::NoNewProofsGuaranteed, &[mo], &[], &[], fresh, msg);
        }
        for (i, &h) in hs.iter().enumerate() {
            for &g in &hs[i + 1..] {
                if m.undivided(mo, h, g) && m.act(mo, h) != m.act(mo, g) {
                    let diff: Vec<Term> =
                        m.act(mo, h).symmetric_difference(m.act(mo, g)).cloned().collect();
                    let msg = format!("undivided histories disagree on {}", show_terms(&diff));
                    c.push(Constraint::NewProofMakesHistoriesDivide, &[mo], &[h, g], &[], diff, msg);
                }
            }
        }
    }
}

fn relations(c: &mut Collector<'_>) {
    let m = c.model;
    for a in m.moments() {
        for b in m.moments() {
            if m.le(a, b) && !m.r(a, b) {
                c.push(Constraint::FutureAlwaysMatters, &[a, b], &[], &[], vec![], "order pair missing from R".into());
            }
            if m.r(a, b) && !m.r_e(a, b) {
                c.push(Constraint::RWithinRe, &[a, b], &[], &[], vec![], "R pair missing from R_e".into());
            }
            if m.r_e(a, b) {
                let lost: Vec<Term> = m.act_moment(a).difference(m.act_moment(b)).cloned().collect();
                if !lost.is_empty() {
                    let msg = format!("Act_m loses {} along R_e", show_terms(&lost));
                    c.push(Constraint::EpistemicTransparency, &[a, b], &[], &[], lost, msg);
                }
            }
        }
    }
}
