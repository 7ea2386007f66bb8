use thiserror::Error;

use crate::syntax::Formula;

use super::cs::ConstantSpecification;
use super::proof::{Justification, Proof};
use super::schemes::{is_instance, unproved_disjunction, unproven_pairs, Mode};

/// Why a proof was rejected; `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct Rejection {
    pub line: usize,
    pub reason: String,
}

/// Checks every line and returns the conclusion (the last formula).
/// Formulas are compared after rewriting `<>` and `<j>` into their primitive
/// forms.
pub fn check_proof(proof: &Proof, cs: &ConstantSpecification, mode: Mode) -> Result<Formula, Rejection> {
    if proof.is_empty() {
        return Err(Rejection { line: 0, reason: "empty proof".into() });
    }
    let normal: Vec<Formula> = proof.lines.iter().map(|l| l.formula.normalize()).collect();
    for (i, line) in proof.lines.iter().enumerate() {
        let reject = |reason: String| Rejection { line: i + 1, reason };
        let earlier = |k: usize| -> Result<&Formula, Rejection> {
            if k < i {
                Ok(&normal[k])
            } else {
                Err(reject(format!("step {} does not precede this line", k + 1)))
            }
        };
        let here = &normal[i];
        if let Some(a) = line.formula.agents().into_iter().find(|a| !proof.agents.contains(a)) {
            return Err(reject(format!("agent '{a}' is not in the agent set")));
        }
        match &line.justification {
            Justification::Axiom(id) => {
                if !is_instance(*id, &line.formula, &proof.agents, mode) {
                    let reason = if id.as_str() == "AS4" && mode == Mode::Pi {
                        "the S4 axiom scheme is only available when the S4 rule is replaced".to_string()
                    } else {
                        format!("not an instance of {id}")
                    };
                    return Err(reject(reason));
                }
            }
            Justification::Cs => {
                if !cs.contains(&line.formula) {
                    return Err(reject("not in the constant specification".into()));
                }
            }
            Justification::Mp(a, b) => {
                let (x, y) = (earlier(*a)?, earlier(*b)?);
                let fits = |minor: &Formula, major: &Formula| {
                    matches!(major, Formula::Imp(p, q) if **p == *minor && **q == *here)
                };
                if !fits(x, y) && !fits(y, x) {
                    return Err(reject(format!("steps {} and {} do not yield this line by modus ponens", a + 1, b + 1)));
                }
            }
            Justification::Nec(a) => {
                let prem = earlier(*a)?;
                if *here != Formula::know(prem.clone()) {
                    return Err(reject(format!("not K applied to step {}", a + 1)));
                }
            }
            Justification::S4 { premise, pairs } => {
                if mode == Mode::PiPrime {
                    return Err(reject("the S4 rule is replaced by its axiom scheme here".into()));
                }
                let prem = earlier(*premise)?;
                let Formula::Imp(ka, d) = prem else {
                    return Err(reject(format!("step {} is not an implication", premise + 1)));
                };
                if !matches!(**ka, Formula::Know(_)) {
                    return Err(reject(format!("step {} does not start with K", premise + 1)));
                }
                let normal_pairs: Vec<_> = pairs.iter().map(|(t, b)| (t.clone(), b.normalize())).collect();
                if unproven_pairs(d).as_deref() != Some(&normal_pairs[..]) {
                    return Err(reject(format!(
                        "step {} does not end in the ~Proven disjunction for the listed pairs",
                        premise + 1
                    )));
                }
                let expected = unproved_disjunction(&proof.agents, pairs)
                    .map(|c| Formula::imp((**ka).clone(), c.normalize()));
                if expected.as_ref() != Some(here) {
                    return Err(reject("conclusion is not the S4 consequent for the listed pairs".into()));
                }
            }
        }
    }
    Ok(proof.lines.last().expect("non-empty").formula.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(text: &str, mode: Mode) -> Result<Formula, Rejection> {
        check_proof(&Proof::parse(text).unwrap(), &ConstantSpecification::empty(), mode)
    }

    #[test]
    fn single_axiom_line() {
        assert!(check("1. Kp -> p ; ax:A7-T\n", Mode::Pi).is_ok());
    }

    #[test]
    fn modus_ponens_either_order() {
        let text = "1. Kp -> p ; ax:A7-T\n2. (Kp -> p) -> (q -> (Kp -> p)) ; ax:A0-1\n3. q -> (Kp -> p) ; mp:2,1\n";
        assert!(check(text, Mode::Pi).is_ok());
        assert!(check(&text.replace("mp:2,1", "mp:1,2"), Mode::Pi).is_ok());
        let bad = check(&text.replace("mp:2,1", "mp:1,1"), Mode::Pi).unwrap_err();
        assert_eq!(bad.line, 3);
    }

    #[test]
    fn s4_rule_and_axiom() {
        let text = "agents: i j\n1. K~Proven(t, p) -> ~Proven(t, p) ; ax:A7-T\n2. K~Proven(t, p) -> ~Prove(i, t, p) & ~Prove(j, t, p) ; s4:1[(t, p)]\n";
        assert!(check(text, Mode::Pi).is_ok());
        assert_eq!(check(text, Mode::PiPrime).unwrap_err().line, 2);
        let swapped = text.replace("~Prove(i, t, p) & ~Prove(j, t, p)", "~Prove(j, t, p) & ~Prove(i, t, p)");
        assert_eq!(check(&swapped, Mode::Pi).unwrap_err().line, 2);
        let axiom = "agents: i j\n1. K~Proven(t, p) -> ~Prove(i, t, p) & ~Prove(j, t, p) ; ax:AS4\n";
        assert!(check(axiom, Mode::PiPrime).is_ok());
        assert_eq!(check(axiom, Mode::Pi).unwrap_err().line, 1);
    }

    #[test]
    fn forward_references_are_rejected() {
        let text = "1. K(Kp -> p) ; nec:2\n2. Kp -> p ; ax:A7-T\n";
        assert_eq!(check(text, Mode::Pi).unwrap_err().line, 1);
        let text = "1. Kp -> p ; ax:A7-T\n2. K(Kp -> p) ; nec:1\n";
        assert!(check(text, Mode::Pi).is_ok());
    }

    #[test]
    fn constant_specification_lines() {
        let ag = crate::syntax::AgentSet::new(["j"]).unwrap();
        let cs = ConstantSpecification::parse("c1:(p -> (q -> p))\n", &ag).unwrap();
        let p = Proof::parse("1. c1:(p -> (q -> p)) ; cs\n").unwrap();
        assert!(check_proof(&p, &cs, Mode::Pi).is_ok());
        assert!(check_proof(&p, &ConstantSpecification::empty(), Mode::Pi).is_err());
    }
}
