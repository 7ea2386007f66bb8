//! Replacing applications of the S4 rule with instances of its axiom form.

use super::builder::ProofBuilder;
use super::check::{check_proof, Rejection};
use super::cs::ConstantSpecification;
use super::proof::{Justification, Line, Proof};
use super::schemes::Mode;
use crate::syntax::Formula;

/// Lines added per S4 step: the step itself becomes fifteen lines.
pub const LINES_PER_S4_STEP: usize = 14;

/// Rewrites every S4 step `KD -> B ⊢ KD -> C` as
///
/// ```text
/// K(KD -> B)                       nec
/// K(KD -> B) -> (KKD -> KB)        K distribution
/// KKD -> KB                        mp
/// KD -> KKD                        K positive introspection
/// KD -> KB                         syllogism (five lines)
/// KB -> C                          S4 axiom
/// KD -> C                          syllogism (five lines)
/// ```
///
/// The input must check in the system with the rule; the output checks in
/// the system with the axiom and has the same conclusion.
pub fn eliminate_s4(proof: &Proof, cs: &ConstantSpecification) -> Result<Proof, Rejection> {
    check_proof(proof, cs, Mode::Pi)?;
    if proof.s4_steps() == 0 {
        return Ok(proof.clone());
    }
    let mut b = ProofBuilder::new(proof.agents.clone());
    let mut new_index = Vec::with_capacity(proof.len());
    for line in &proof.lines {
        let at = match &line.justification {
            Justification::S4 { premise, pairs } => {
                let prem = new_index[*premise];
                let prem_f = b.formula(prem).clone();
                let Formula::Imp(kd, bb) = &prem_f else { unreachable!("checked S4 premise") };
                let Formula::Know(d) = &**kd else { unreachable!("checked S4 premise") };
                let (kd, kb) = ((**kd).clone(), Formula::know((**bb).clone()));
                let boxed = b.nec(prem);
                let dist = b.axiom("A7-K", Formula::imp(Formula::know(prem_f.clone()), Formula::imp(Formula::know(kd.clone()), kb)));
                let kkd_kb = b.mp(boxed, dist);
                let intro = b.axiom("A7-4", Formula::imp(kd.clone(), Formula::know(Formula::know((**d).clone()))));
                let kd_kb = b.hs(intro, kkd_kb);
                let ax = b.s4_axiom(pairs);
                let last = b.hs(kd_kb, ax);
                b.replace_formula(last, line.formula.clone());
                last
            }
            Justification::Mp(x, y) => b.raw(Line {
                formula: line.formula.clone(),
                justification: Justification::Mp(new_index[*x], new_index[*y]),
            }),
            Justification::Nec(x) => b.raw(Line {
                formula: line.formula.clone(),
                justification: Justification::Nec(new_index[*x]),
            }),
            Justification::Axiom(_) | Justification::Cs => b.raw(line.clone()),
        };
        new_index.push(at);
    }
    Ok(b.finish())
}
