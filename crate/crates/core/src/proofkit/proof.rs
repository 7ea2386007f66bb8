//! Hilbert proofs and their text format.
//!
//! ```text
//! agents: i j
//! 1. Kp -> []K[]p ; ax:A8
//! 2. []K[]p -> K[]p ; ax:A1-T
//! 3. K(~Proven(t, p)) -> ~Proven(t, p) ; ax:A7-T
//! 4. K(~Proven(t, p)) -> ~Prove(i, t, p) & ~Prove(j, t, p) ; s4:3[(t, p)]
//! ```
//!
//! Line numbers are 1-based and must be consecutive. `mp:i,j` takes the two
//! premises in either order. The `agents:` header is optional and defaults
//! to the single agent `j`.

use std::fmt;

use thiserror::Error;

use crate::syntax::{parse_formula, parse_formula_with, parse_term, print_term, AgentSet, Formula, ParseOptions, Term};

use super::schemes::SchemeId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom(SchemeId),
    Cs,
    /// Premise line indices (0-based), in either order.
    Mp(usize, usize),
    Nec(usize),
    S4 { premise: usize, pairs: Vec<(Term, Formula)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub agents: AgentSet,
    pub lines: Vec<Line>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("agents: {0}")]
    Agents(#[from] crate::syntax::SyntaxError),
}

impl Proof {
    pub fn new(agents: AgentSet) -> Self {
        Proof { agents, lines: Vec::new() }
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn s4_steps(&self) -> usize {
        self.lines.iter().filter(|l| matches!(l.justification, Justification::S4 { .. })).count()
    }

    pub fn parse(text: &str) -> Result<Proof, ProofFormatError> {
        let mut agents = None;
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let err = |message: String| ProofFormatError::Syntax { line: n, message };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix("agents:") {
                if agents.is_some() || !lines.is_empty() {
                    return Err(err("the agents header must come first and only once".into()));
                }
                agents = Some(AgentSet::new(rest.split_whitespace())?);
                continue;
            }
            let ag = agents.get_or_insert_with(|| AgentSet::new(["j"]).expect("valid agent"));
            let (num, rest) = body.split_once('.').ok_or_else(|| err("expected 'n. FORMULA ; RULE'".into()))?;
            let num: usize = num.trim().parse().map_err(|_| err(format!("bad line number '{}'", num.trim())))?;
            if num != lines.len() + 1 {
                return Err(err(format!("expected step {}, found {num}", lines.len() + 1)));
            }
            let (formula, rule) = rest.split_once(';').ok_or_else(|| err("missing '; RULE'".into()))?;
            let formula = parse_formula(formula.trim(), ag).map_err(|e| err(e.to_string()))?;
            let justification = parse_rule(rule.trim(), ag).map_err(err)?;
            lines.push(Line { formula, justification });
        }
        let agents = agents.unwrap_or_else(|| AgentSet::new(["j"]).expect("valid agent"));
        Ok(Proof { agents, lines })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn index(s: &str) -> Result<usize, String> {
    let n: usize = s.trim().parse().map_err(|_| format!("bad step reference '{}'", s.trim()))?;
    n.checked_sub(1).ok_or_else(|| "step references are 1-based".to_string())
}

fn parse_rule(rule: &str, agents: &AgentSet) -> Result<Justification, String> {
    if rule == "cs" {
        return Ok(Justification::Cs);
    }
    let (name, arg) = rule.split_once(':').ok_or_else(|| format!("unknown rule '{rule}'"))?;
    match name.trim() {
        "ax" => SchemeId::parse(arg.trim())
            .map(Justification::Axiom)
            .ok_or_else(|| format!("unknown axiom scheme '{}'", arg.trim())),
        "mp" => {
            let (a, b) = arg.split_once(',').ok_or_else(|| "mp needs two step numbers".to_string())?;
            Ok(Justification::Mp(index(a)?, index(b)?))
        }
        "nec" => Ok(Justification::Nec(index(arg)?)),
        "s4" => {
            let (premise, pairs) = arg.split_once('[').ok_or_else(|| "s4 needs '[(t, B); ...]'".to_string())?;
            let pairs = pairs.trim().strip_suffix(']').ok_or_else(|| "unclosed s4 pair list".to_string())?;
            let pairs = pairs
                .split(';')
                .map(|p| parse_pair(p.trim(), agents))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Justification::S4 { premise: index(premise)?, pairs })
        }
        other => Err(format!("unknown rule '{other}'")),
    }
}

fn parse_pair(text: &str, agents: &AgentSet) -> Result<(Term, Formula), String> {
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| format!("expected '(t, B)', found '{text}'"))?;
    let (t, b) = inner.split_once(',').ok_or_else(|| format!("expected '(t, B)', found '{text}'"))?;
    let t = parse_term(t.trim()).map_err(|e| e.to_string())?;
    let b = parse_formula_with(b.trim(), ParseOptions::new(agents)).map_err(|e| e.to_string())?;
    Ok((t, b))
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(id) => write!(f, "ax:{id}"),
            Justification::Cs => f.write_str("cs"),
            Justification::Mp(a, b) => write!(f, "mp:{},{}", a + 1, b + 1),
            Justification::Nec(a) => write!(f, "nec:{}", a + 1),
            Justification::S4 { premise, pairs } => {
                let pairs: Vec<String> = pairs.iter().map(|(t, b)| format!("({}, {b})", print_term(t))).collect();
                write!(f, "s4:{}[{}]", premise + 1, pairs.join("; "))
            }
        }
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "agents: {}", self.agents)?;
        for (i, line) in self.lines.iter().enumerate() {
            writeln!(f, "{}. {} ; {}", i + 1, line.formula, line.justification)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let text = "agents: i j\n1. K~Proven(t, p) -> ~Proven(t, p) ; ax:A7-T\n2. K~Proven(t, p) -> ~Prove(i, t, p) & ~Prove(j, t, p) ; s4:1[(t, p)]\n";
        let p = Proof::parse(text).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.s4_steps(), 1);
        assert_eq!(Proof::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn default_agent_is_j() {
        let p = Proof::parse("1. Kp -> p ; ax:A7-T\n").unwrap();
        assert_eq!(p.agents.to_string(), "j");
    }

    #[test]
    fn format_errors() {
        for (text, line) in [
            ("1. Kp -> p\n", 1),
            ("1. Kp -> p ; ax:Z9\n", 1),
            ("1. Kp -> p ; ax:A7-T\n3. p ; mp:1,1\n", 2),
            ("1. Kp -> p ; mp:0,1\n", 1),
            ("1. [i]p ; ax:A1-T\n", 1),
        ] {
            match Proof::parse(text) {
                Err(ProofFormatError::Syntax { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
