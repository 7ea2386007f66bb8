//! Line-oriented model files.
//!
//! ```text
//! agents: j i
//! moments: m-1 m0 mid ma
//! order: m-1<m0 m0<mid m0<ma
//! choice: m0 j : {ma} {mid}
//! act: m0/mid = x
//! evidence: * * = ALL
//! evidence: m0 x = "p" "q -> p"
//! R: +order m0>ma
//! Re: =R
//! val: p @ m-1/mid m0/ma
//! val: q @ ALL
//! ```
//!
//! `R` lines name a base (`+order`, `=id`) followed by extra pairs `a>b`
//! meaning `R(a, b)`. Without a base the relation is exactly the listed pairs
//! (closed reflexively and transitively). A missing `R` line means `+order`;
//! a missing `Re` line means `=R`. `Re` additionally accepts `+R`.

use crate::syntax::{parse_term, print_formula, print_term_compact, AgentSet, ParseOptions};

use super::{
    ActEntry, ChoiceEntry, EvidenceEntry, EvidenceSet, FiniteJstitModel, ModelDescription,
    ModelError, RelationBase, RelationSpec, ValuationEntry, ValuationPoints,
};

const RESERVED: &[char] = &['<', '>', '/', '{', '}', '@', '=', '"', '#', ':', '*'];

pub fn load_model(text: &str) -> Result<FiniteJstitModel, ModelError> {
    parse_description(text)?.build()
}

fn err(line: usize, message: impl Into<String>) -> ModelError {
    ModelError::Syntax { line, message: message.into() }
}

fn check_name(line: usize, name: &str) -> Result<String, ModelError> {
    if name.is_empty() || name.contains(RESERVED) || name.contains(char::is_whitespace) {
        return Err(err(line, format!("bad identifier '{name}'")));
    }
    Ok(name.to_string())
}

fn strip_comment(line: &str) -> &str {
    // '#' never occurs inside quoted formulas, so a plain split is enough.
    line.split('#').next().unwrap_or("")
}

pub(crate) fn parse_description(text: &str) -> Result<ModelDescription, ModelError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = strip_comment(raw).trim();
        if body.is_empty() {
            continue;
        }
        let Some((key, rest)) = body.split_once(':') else {
            return Err(err(i + 1, format!("expected 'key: value', found '{body}'")));
        };
        lines.push((i + 1, key.trim(), rest.trim()));
    }

    let mut agents: Option<Vec<String>> = None;
    for &(n, key, rest) in &lines {
        if key == "agents" {
            if agents.is_some() {
                return Err(err(n, "agents given twice"));
            }
            agents = Some(rest.split_whitespace().map(String::from).collect());
        }
    }
    let agents = agents.ok_or_else(|| err(0, "missing 'agents:' line"))?;
    let agent_set = AgentSet::new(agents.iter().cloned())?;

    let mut d = ModelDescription::new(agents);
    let mut r_seen = false;
    for &(n, key, rest) in &lines {
        match key {
            "agents" => {}
            "moments" => {
                for name in rest.split_whitespace() {
                    d.moments.push(check_name(n, name)?);
                }
            }
            "order" => {
                for chain in rest.split_whitespace() {
                    let parts: Vec<&str> = chain.split('<').collect();
                    if parts.len() < 2 {
                        return Err(err(n, format!("expected 'a<b', found '{chain}'")));
                    }
                    for w in parts.windows(2) {
                        d.order.push((check_name(n, w[0])?, check_name(n, w[1])?));
                    }
                }
            }
            "choice" => d.choice.push(parse_choice(n, rest)?),
            "act" => d.act.push(parse_act(n, rest)?),
            "evidence" => d.evidence.push(parse_evidence(n, rest, &agent_set)?),
            "R" => {
                if r_seen {
                    return Err(err(n, "R given twice"));
                }
                r_seen = true;
                d.r = parse_relation(n, rest, false)?.ok_or_else(|| err(n, "R cannot refer to itself"))?;
            }
            "Re" => {
                if d.re.is_some() {
                    return Err(err(n, "Re given twice"));
                }
                d.re = parse_relation(n, rest, true)?;
            }
            "val" => d.valuation.push(parse_val(n, rest)?),
            other => return Err(err(n, format!("unknown key '{other}'"))),
        }
    }
    Ok(d)
}

fn parse_choice(n: usize, rest: &str) -> Result<ChoiceEntry, ModelError> {
    let (head, blocks_text) =
        rest.split_once(':').ok_or_else(|| err(n, "expected 'MOMENT AGENT : {..} {..}'"))?;
    let head: Vec<&str> = head.split_whitespace().collect();
    let [moment, agent] = head[..] else {
        return Err(err(n, "expected 'MOMENT AGENT' before ':'"));
    };
    let mut blocks = Vec::new();
    let mut text = blocks_text.trim();
    while !text.is_empty() {
        let inner = text.strip_prefix('{').ok_or_else(|| err(n, "choice blocks must be '{...}'"))?;
        let close = inner.find('}').ok_or_else(|| err(n, "unclosed choice block"))?;
        let leaves = inner[..close]
            .split_whitespace()
            .map(|l| check_name(n, l))
            .collect::<Result<Vec<_>, _>>()?;
        blocks.push(leaves);
        text = inner[close + 1..].trim_start();
    }
    if blocks.is_empty() {
        return Err(err(n, "choice entry without blocks"));
    }
    Ok(ChoiceEntry { moment: check_name(n, moment)?, agent: agent.to_string(), blocks })
}

fn parse_address(n: usize, text: &str) -> Result<(String, String), ModelError> {
    let (m, l) = text
        .split_once('/')
        .ok_or_else(|| err(n, format!("expected 'moment/leaf', found '{text}'")))?;
    Ok((check_name(n, m)?, check_name(n, l)?))
}

fn parse_act(n: usize, rest: &str) -> Result<ActEntry, ModelError> {
    let (addr, terms) = rest.split_once('=').ok_or_else(|| err(n, "expected 'moment/leaf = terms'"))?;
    let (moment, leaf) = parse_address(n, addr.trim())?;
    let terms = terms
        .split_whitespace()
        .map(|t| parse_term(t).map_err(|e| err(n, format!("term '{t}': {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ActEntry { moment, leaf, terms })
}

fn parse_evidence(n: usize, rest: &str, agents: &AgentSet) -> Result<EvidenceEntry, ModelError> {
    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err(n, "expected 'MOMENT TERM = ...'"))?;
    let lhs = lhs.trim();
    let (moment, term) = lhs
        .split_once(char::is_whitespace)
        .ok_or_else(|| err(n, "expected 'MOMENT TERM' before '='"))?;
    let moment = match moment {
        "*" => None,
        m => Some(check_name(n, m)?),
    };
    let term = match term.trim() {
        "*" => None,
        t => Some(parse_term(t).map_err(|e| err(n, format!("term '{t}': {e}")))?),
    };
    let rhs = rhs.trim();
    let set = if rhs == "ALL" {
        EvidenceSet::Everything
    } else {
        let mut formulas = Vec::new();
        let mut text = rhs;
        while !text.is_empty() {
            let inner = text
                .strip_prefix('"')
                .ok_or_else(|| err(n, "evidence formulas must be quoted"))?;
            let close = inner.find('"').ok_or_else(|| err(n, "unclosed quote"))?;
            let src = &inner[..close];
            let f = crate::syntax::parse_formula_with(src, ParseOptions::new(agents).with_et(true))
                .map_err(|e| err(n, format!("formula \"{src}\": {e}")))?;
            formulas.push(f);
            text = inner[close + 1..].trim_start();
        }
        EvidenceSet::from_formulas(formulas)
    };
    Ok(EvidenceEntry { moment, term, set })
}

fn parse_relation(n: usize, rest: &str, epistemic: bool) -> Result<Option<RelationSpec>, ModelError> {
    let mut words = rest.split_whitespace().peekable();
    let base = match words.peek().copied() {
        Some("=R") | Some("+R") if !epistemic => return Err(err(n, "R cannot refer to itself")),
        Some("=R") => {
            words.next();
            if words.peek().is_some() {
                return Err(err(n, "'=R' takes no extra pairs; use '+R'"));
            }
            return Ok(None);
        }
        Some("+R") => {
            words.next();
            RelationBase::R
        }
        Some("+order") | Some("=order") => {
            words.next();
            RelationBase::Order
        }
        Some("=id") => {
            words.next();
            RelationBase::Identity
        }
        _ => RelationBase::Identity,
    };
    let mut pairs = Vec::new();
    for w in words {
        let (a, b) = w.split_once('>').ok_or_else(|| err(n, format!("expected 'a>b', found '{w}'")))?;
        pairs.push((check_name(n, a)?, check_name(n, b)?));
    }
    Ok(Some(RelationSpec { base, pairs }))
}

fn parse_val(n: usize, rest: &str) -> Result<ValuationEntry, ModelError> {
    let (atom, pts) = rest.split_once('@').ok_or_else(|| err(n, "expected 'atom @ points'"))?;
    let atom = atom.trim();
    if !crate::syntax::is_atom_name(atom) {
        return Err(err(n, format!("'{atom}' is not an atom")));
    }
    let pts = pts.trim();
    let points = if pts == "ALL" {
        ValuationPoints::All
    } else {
        ValuationPoints::Pairs(
            pts.split_whitespace().map(|p| parse_address(n, p)).collect::<Result<_, _>>()?,
        )
    };
    Ok(ValuationEntry { atom: atom.to_string(), points })
}

fn emit_relation(spec: &RelationSpec) -> String {
    let mut words = vec![match spec.base {
        RelationBase::Identity => "=id".to_string(),
        RelationBase::Order => "+order".to_string(),
        RelationBase::R => "+R".to_string(),
    }];
    words.extend(spec.pairs.iter().map(|(a, b)| format!("{a}>{b}")));
    words.join(" ")
}

/// Renders a description in the model file format.
pub fn emit(d: &ModelDescription) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("agents: {}", d.agents.join(" ")));
    line(format!("moments: {}", d.moments.join(" ")));
    if !d.order.is_empty() {
        let pairs: Vec<String> = d.order.iter().map(|(a, b)| format!("{a}<{b}")).collect();
        line(format!("order: {}", pairs.join(" ")));
    }
    for c in &d.choice {
        let blocks: Vec<String> = c.blocks.iter().map(|b| format!("{{{}}}", b.join(" "))).collect();
        line(format!("choice: {} {} : {}", c.moment, c.agent, blocks.join(" ")));
    }
    for a in &d.act {
        let terms: Vec<String> = a.terms.iter().map(print_term_compact).collect();
        line(format!("act: {}/{} = {}", a.moment, a.leaf, terms.join(" ")));
    }
    for e in &d.evidence {
        let m = e.moment.as_deref().unwrap_or("*");
        let t = e.term.as_ref().map(print_term_compact).unwrap_or_else(|| "*".into());
        let rhs = match &e.set {
            EvidenceSet::Everything => "ALL".to_string(),
            EvidenceSet::Finite(fs) => {
                fs.iter().map(|f| format!("\"{}\"", print_formula(f))).collect::<Vec<_>>().join(" ")
            }
        };
        line(format!("evidence: {m} {t} = {rhs}").trim_end().to_string());
    }
    line(format!("R: {}", emit_relation(&d.r)));
    match &d.re {
        None => line("Re: =R".to_string()),
        Some(spec) => line(format!("Re: {}", emit_relation(spec))),
    }
    for v in &d.valuation {
        let pts = match &v.points {
            ValuationPoints::All => "ALL".to_string(),
            ValuationPoints::Pairs(ps) => {
                ps.iter().map(|(m, l)| format!("{m}/{l}")).collect::<Vec<_>>().join(" ")
            }
        };
        line(format!("val: {} @ {}", v.atom, pts).trim_end().to_string());
    }
    out
}

impl ModelDescription {
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        parse_description(text)
    }

    pub fn to_text(&self) -> String {
        emit(self)
    }
}

impl FiniteJstitModel {
    pub fn to_text(&self) -> String {
        emit(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# two-moment fork with a witness
agents: j i
moments: m-1 m0 mid ma
order: m-1<m0 m0<mid m0<ma
choice: m0 j : {ma} {mid}
act: m0/mid = x
act: mid/mid = x y
evidence: * * = ALL
evidence: m0 s*t = \"p -> q\" \"Kp\"
R: +order
Re: =R
val: p @ m-1/mid m0/ma
val: q @ ALL
";

    #[test]
    fn parses_sample() {
        let d = parse_description(SAMPLE).unwrap();
        assert_eq!(d.agents, vec!["j", "i"]);
        assert_eq!(d.moments.len(), 4);
        assert_eq!(d.order.len(), 3);
        assert_eq!(d.choice[0].blocks, vec![vec!["ma".to_string()], vec!["mid".to_string()]]);
        assert_eq!(d.act[1].terms.len(), 2);
        assert_eq!(d.evidence.len(), 2);
        assert!(d.re.is_none());
        let m = d.build().unwrap();
        assert_eq!(m.history_count(), 2);
    }

    #[test]
    fn emit_parse_round_trip() {
        let d = parse_description(SAMPLE).unwrap();
        let again = parse_description(&emit(&d)).unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn chains_and_relation_pairs() {
        let d = parse_description("agents: j\nmoments: a b c\norder: a<b<c\nR: =id b>a\nRe: +R c>a\n").unwrap();
        assert_eq!(d.order.len(), 2);
        assert_eq!(d.r.base, RelationBase::Identity);
        assert_eq!(d.r.pairs, vec![("b".to_string(), "a".to_string())]);
        assert_eq!(d.re.as_ref().unwrap().base, RelationBase::R);
    }

    #[test]
    fn syntax_errors_carry_lines() {
        for (text, line) in [
            ("agents: j\nmoments: a\nbogus line\n", 3),
            ("agents: j\nmoments: a\nact: a = x\n", 3),
            ("agents: j\nmoments: a\nevidence: a x = p\n", 3),
            ("agents: j\nmoments: a\nevidence: a x = \"[k]p\"\n", 3),
            ("agents: j\nmoments: a\nchoice: a j : a\n", 3),
        ] {
            match parse_description(text) {
                Err(ModelError::Syntax { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(parse_description("moments: a\n").is_err());
    }
}
