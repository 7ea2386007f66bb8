//! Machine-checked derivations of the basic theorems of the system, plus
//! small proofs exercising the S4 rule. All use the agent community `{i, j}`.

use crate::syntax::{parse_formula, Agent, AgentSet, Formula, Term};

use super::builder::ProofBuilder;
use super::proof::Proof;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    /// The theorem, as written in the corpus index.
    pub statement: Formula,
    pub proof: Proof,
}

pub fn corpus_agents() -> AgentSet {
    AgentSet::new(["i", "j"]).expect("valid agents")
}

fn p() -> Formula {
    Formula::atom("p")
}

fn q() -> Formula {
    Formula::atom("q")
}

fn t() -> Term {
    Term::var("t")
}

fn prove(agent: &str) -> Formula {
    Formula::prove(Agent::new(agent), t(), p())
}

fn t0(b: &mut ProofBuilder) {
    b.t0(p());
}

fn t1(b: &mut ProofBuilder, a: Formula) -> usize {
    let tt = Term::check(t());
    let first = b.ax_with("A5", std::slice::from_ref(&a), &[t()], None);
    let up = b.and_left(first);
    let second = b.ax_with("A5", &[Formula::just(t(), a)], &[tt], None);
    let known = b.and_right(second);
    b.hs(up, known)
}

fn t2(b: &mut ProofBuilder) {
    let k = t1(b, p());
    let settle = b.t0(Formula::just(t(), p()));
    b.hs(k, settle);
}

fn t3(b: &mut ProofBuilder) {
    let four = b.ax("A7-4", &[p()]);
    let settle = b.t0(Formula::know(p()));
    b.hs(four, settle);
}

fn t4(b: &mut ProofBuilder) {
    let proven = Formula::proven(t(), p());
    let b11 = b.ax_with("B11", &[p()], &[t()], None);
    let known = b.and_left(b11);
    let settle = b.t0(proven);
    b.hs(known, settle);
}

/// `~[]P` for `P = Prove(j, t, p)`.
fn t5_single(b: &mut ProofBuilder, agent: &str) -> usize {
    let pr = prove(agent);
    let truth = b.ax("A1-T", std::slice::from_ref(&pr));
    let from_neg = b.contra(truth);
    let b9 = b.ax_with("B9", &[p()], &[t()], Some(&Agent::new(agent)));
    let rest = b.and_right(b9);
    let rest = b.and_right(rest);
    let from_pos = b.and_left(rest);
    let both = b.cases(from_pos, from_neg);
    let lem = b.lem(pr);
    b.mp(lem, both)
}

fn t5_pair(b: &mut ProofBuilder) {
    let i = Agent::new("i");
    let (p1, p2) = (prove("i"), prove("j"));
    let d = Formula::or(p1.clone(), p2.clone());
    let n = Formula::and(Formula::not(p1.clone()), Formula::not(p2.clone()));
    let not_n = Formula::not(n.clone());

    // ~~[i]~N -> P1, from the "nobody proves it" axiom for i.
    let b13 = b.axiom(
        "B13",
        super::schemes::nobody_proves_instance(b.agents(), &i, &t(), &p()),
    );
    let back = b.contra(b13);
    let dne = b.ax("A0-10", std::slice::from_ref(&p1));
    let to_p1 = b.hs(back, dne);

    // D -> ~N
    let left = b.ax("A0-3", &[Formula::not(p1.clone()), Formula::not(p2.clone())]);
    let left = b.contra(left);
    let dn1 = b.dni(p1.clone());
    let h1 = b.hs(dn1, left);
    let right = b.ax("A0-4", &[Formula::not(p1), Formula::not(p2.clone())]);
    let right = b.contra(right);
    let dn2 = b.dni(p2);
    let h2 = b.hs(dn2, right);
    let d_not_n = b.cases(h1, h2);

    // [i]D -> P1
    let mono = b.cstit_mono(d_not_n, &i);
    let dd = b.dni(Formula::cstit(i.clone(), not_n));
    let chain = b.hs(mono, dd);
    let z9 = b.hs(chain, to_p1);

    // []D -> P1, then []D -> []P1
    let a2 = b.ax_with("A2", std::slice::from_ref(&d), &[], Some(&i));
    let z10 = b.hs(a2, z9);
    let lifted = b.box_mono(z10);
    let four = b.box4(d);
    let z11 = b.hs(four, lifted);

    let single = t5_single(b, "i");
    let flip = b.contra(z11);
    b.mp(single, flip);
}

fn unproven(pairs: &[(Term, Formula)]) -> Formula {
    super::schemes::unproven_disjunction(pairs).expect("non-empty")
}

fn as4(b: &mut ProofBuilder, pairs: &[(Term, Formula)]) -> usize {
    let premise = b.ax("A7-T", &[unproven(pairs)]);
    b.s4(premise, pairs)
}

fn s4_double(b: &mut ProofBuilder) {
    let one = as4(b, &[(t(), p())]);
    let two = as4(b, &[(t(), p()), (Term::var("s"), q())]);
    let (x, y) = (b.formula(one).clone(), b.formula(two).clone());
    let pair = b.ax("A0-5", &[x, y]);
    let step = b.mp(one, pair);
    b.mp(two, step);
}

fn entry(name: &'static str, statement: &str, build: impl FnOnce(&mut ProofBuilder)) -> CorpusEntry {
    let agents = corpus_agents();
    let statement = parse_formula(statement, &agents).expect("corpus statement parses");
    let mut b = ProofBuilder::new(agents);
    build(&mut b);
    CorpusEntry { name, statement, proof: b.finish() }
}

pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        entry("T0", "Kp -> []p", t0),
        entry("T1", "t:p -> Kt:p", |b| {
            t1(b, p());
        }),
        entry("T2", "t:p -> []t:p", t2),
        entry("T3", "Kp -> []Kp", t3),
        entry("T4", "Proven(t, p) -> []Proven(t, p)", t4),
        entry("T5-n1", "~[]Prove(i, t, p)", |b| {
            t5_single(b, "i");
        }),
        entry("T5-n2", "~[](Prove(i, t, p) | Prove(j, t, p))", t5_pair),
        entry("AS4-n1", "K~Proven(t, p) -> ~Prove(i, t, p) & ~Prove(j, t, p)", |b| {
            as4(b, &[(t(), p())]);
        }),
        entry(
            "AS4-n2",
            "K(~Proven(t, p) | ~Proven(s, q)) -> ~Prove(i, t, p) & ~Prove(j, t, p) | ~Prove(i, s, q) & ~Prove(j, s, q)",
            |b| {
                as4(b, &[(t(), p()), (Term::var("s"), q())]);
            },
        ),
        entry(
            "S4-double",
            "(K~Proven(t, p) -> ~Prove(i, t, p) & ~Prove(j, t, p)) & (K(~Proven(t, p) | ~Proven(s, q)) -> ~Prove(i, t, p) & ~Prove(j, t, p) | ~Prove(i, s, q) & ~Prove(j, s, q))",
            s4_double,
        ),
    ]
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}
