//! Forward construction of Hilbert proofs with the usual derived rules
//! expanded into primitive steps.

use crate::syntax::{Agent, AgentSet, Formula, Term};

use super::proof::{Justification, Line, Proof};
use super::schemes::{instance, instance_with, is_instance, s4_axiom_instance, unproved_disjunction, Mode, SchemeId};

/// Appends lines to a proof. Every formula is stored with duals rewritten,
/// and every method returns the index of the line it produced last.
/// Methods panic when their premises have the wrong shape; they are meant
/// for programmatic construction of proofs known to be correct.
pub struct ProofBuilder {
    proof: Proof,
}

fn split_imp(f: &Formula) -> (Formula, Formula) {
    match f {
        Formula::Imp(a, b) => ((**a).clone(), (**b).clone()),
        other => panic!("expected an implication, found {other}"),
    }
}

impl ProofBuilder {
    pub fn new(agents: AgentSet) -> Self {
        ProofBuilder { proof: Proof::new(agents) }
    }

    pub fn agents(&self) -> &AgentSet {
        &self.proof.agents
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.proof.lines[i].formula
    }

    pub fn len(&self) -> usize {
        self.proof.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proof.lines.is_empty()
    }

    pub fn finish(self) -> Proof {
        self.proof
    }

    fn push(&mut self, f: Formula, justification: Justification) -> usize {
        self.proof.lines.push(Line { formula: f.normalize(), justification });
        self.proof.lines.len() - 1
    }

    /// Appends a line verbatim.
    pub(crate) fn raw(&mut self, line: Line) -> usize {
        self.proof.lines.push(line);
        self.proof.lines.len() - 1
    }

    /// Swaps in an equivalent spelling of a line's formula.
    pub(crate) fn replace_formula(&mut self, i: usize, f: Formula) {
        debug_assert_eq!(f.normalize(), self.proof.lines[i].formula.normalize());
        self.proof.lines[i].formula = f;
    }

    /// An axiom line; `id` must be a scheme that `f` instantiates.
    pub fn axiom(&mut self, id: &str, f: Formula) -> usize {
        let sid = SchemeId::parse(id).unwrap_or_else(|| panic!("unknown scheme {id}"));
        assert!(
            is_instance(sid, &f, &self.proof.agents, Mode::PiPrime),
            "{f} is not an instance of {id}"
        );
        self.push(f, Justification::Axiom(sid))
    }

    pub fn ax(&mut self, id: &str, formulas: &[Formula]) -> usize {
        self.axiom(id, instance(id, formulas))
    }

    pub fn ax_with(&mut self, id: &str, formulas: &[Formula], terms: &[Term], agent: Option<&Agent>) -> usize {
        self.axiom(id, instance_with(id, formulas, terms, agent))
    }

    pub fn cs(&mut self, f: Formula) -> usize {
        self.push(f, Justification::Cs)
    }

    /// From `A` (line `minor`) and `A -> B` (line `major`) infer `B`.
    pub fn mp(&mut self, minor: usize, major: usize) -> usize {
        let (a, b) = split_imp(self.formula(major));
        assert_eq!(a.normalize(), self.formula(minor).normalize(), "modus ponens premises do not fit");
        self.push(b, Justification::Mp(minor, major))
    }

    pub fn nec(&mut self, i: usize) -> usize {
        let f = Formula::know(self.formula(i).clone());
        self.push(f, Justification::Nec(i))
    }

    /// The S4 rule applied to `KA -> (~Proven(t1,B1) | ...)`.
    pub fn s4(&mut self, premise: usize, pairs: &[(Term, Formula)]) -> usize {
        let (ka, _) = split_imp(self.formula(premise));
        let c = unproved_disjunction(&self.proof.agents, pairs).expect("at least one pair");
        self.push(Formula::imp(ka, c), Justification::S4 { premise, pairs: pairs.to_vec() })
    }

    /// The axiom form of the S4 rule.
    pub fn s4_axiom(&mut self, pairs: &[(Term, Formula)]) -> usize {
        let f = s4_axiom_instance(&self.proof.agents, pairs).expect("at least one pair");
        self.axiom("AS4", f)
    }

    /// From `X -> Y` and `Y -> Z` infer `X -> Z` (five lines).
    pub fn hs(&mut self, xy: usize, yz: usize) -> usize {
        let (x, y) = split_imp(self.formula(xy));
        let (y2, z) = split_imp(self.formula(yz));
        assert_eq!(y.normalize(), y2.normalize(), "syllogism premises do not chain");
        let yz_f = self.formula(yz).clone();
        let weak = self.ax("A0-1", &[yz_f, x.clone()]);
        let x_yz = self.mp(yz, weak);
        let dist = self.ax("A0-2", &[x, y, z]);
        let step = self.mp(x_yz, dist);
        self.mp(xy, step)
    }

    /// `A -> A`.
    pub fn identity(&mut self, a: Formula) -> usize {
        let aa = Formula::imp(a.clone(), a.clone());
        let l1 = self.ax("A0-1", &[a.clone(), aa.clone()]);
        let l2 = self.ax("A0-2", &[a.clone(), aa, a.clone()]);
        let l3 = self.mp(l1, l2);
        let l4 = self.ax("A0-1", &[a.clone(), a]);
        self.mp(l4, l3)
    }

    /// From `Y -> Z` infer `~Z -> ~Y`.
    pub fn contra(&mut self, yz: usize) -> usize {
        let (y, z) = split_imp(self.formula(yz));
        let l1 = self.ax("A0-9", &[y.clone(), z.clone()]);
        let l2 = self.mp(yz, l1);
        let nz = Formula::not(z);
        let l3 = self.ax("A0-1", &[nz, y]);
        self.hs(l3, l2)
    }

    /// `X -> ~~X`.
    pub fn dni(&mut self, x: Formula) -> usize {
        let nx = Formula::not(x.clone());
        let l1 = self.ax("A0-1", &[x.clone(), nx.clone()]);
        let l2 = self.ax("A0-9", &[nx.clone(), x.clone()]);
        let l3 = self.hs(l1, l2);
        let id = self.identity(nx.clone());
        let l5 = self.ax("A0-1", &[Formula::imp(nx.clone(), nx.clone()), x.clone()]);
        let l6 = self.mp(id, l5);
        let nnx = Formula::not(nx.clone());
        let l7 = self.ax("A0-2", &[x, Formula::imp(nx.clone(), nx), nnx]);
        let l8 = self.mp(l3, l7);
        self.mp(l6, l8)
    }

    /// `P | ~P`.
    pub fn lem(&mut self, p: Formula) -> usize {
        let np = Formula::not(p.clone());
        let d = Formula::or(p.clone(), np.clone());
        let l1 = self.ax("A0-6", &[p.clone(), np.clone()]);
        let c1 = self.contra(l1);
        let l2 = self.ax("A0-7", &[p, np.clone()]);
        let c2 = self.contra(l2);
        let nd = Formula::not(d.clone());
        let l3 = self.ax("A0-9", &[nd, np]);
        let l4 = self.mp(c1, l3);
        let l5 = self.mp(c2, l4);
        let l6 = self.ax("A0-10", &[d]);
        self.mp(l5, l6)
    }

    /// From `X -> (Y & Z)` infer `X -> Y`.
    pub fn and_left(&mut self, i: usize) -> usize {
        let (_, yz) = split_imp(self.formula(i));
        let Formula::And(y, z) = yz else { panic!("expected a conjunction, found {yz}") };
        let l = self.ax("A0-3", &[*y, *z]);
        self.hs(i, l)
    }

    /// From `X -> (Y & Z)` infer `X -> Z`.
    pub fn and_right(&mut self, i: usize) -> usize {
        let (_, yz) = split_imp(self.formula(i));
        let Formula::And(y, z) = yz else { panic!("expected a conjunction, found {yz}") };
        let l = self.ax("A0-4", &[*y, *z]);
        self.hs(i, l)
    }

    /// From `X -> Z` and `Y -> Z` infer `X | Y -> Z`.
    pub fn cases(&mut self, xz: usize, yz: usize) -> usize {
        let (x, z) = split_imp(self.formula(xz));
        let (y, _) = split_imp(self.formula(yz));
        let l = self.ax("A0-8", &[x, y, z]);
        let l2 = self.mp(xz, l);
        self.mp(yz, l2)
    }

    /// `KA -> []A`, through `KA -> []K[]A -> K[]A -> []A`.
    pub fn t0(&mut self, a: Formula) -> usize {
        let l1 = self.ax("A8", std::slice::from_ref(&a));
        let l2 = self.ax("A1-T", &[Formula::know(Formula::nec(a.clone()))]);
        let l3 = self.ax("A7-T", &[Formula::nec(a)]);
        let l4 = self.hs(l1, l2);
        self.hs(l4, l3)
    }

    /// From `A` infer `[]A`.
    pub fn r1_box(&mut self, i: usize) -> usize {
        let a = self.formula(i).clone();
        let k = self.nec(i);
        let t0 = self.t0(a);
        self.mp(k, t0)
    }

    /// From `A` infer `[j]A`.
    pub fn r2_cstit(&mut self, i: usize, j: &Agent) -> usize {
        let a = self.formula(i).clone();
        let b = self.r1_box(i);
        let l = self.ax_with("A2", &[a], &[], Some(j));
        self.mp(b, l)
    }

    /// From `X -> Y` infer `[]X -> []Y`.
    pub fn box_mono(&mut self, xy: usize) -> usize {
        let (x, y) = split_imp(self.formula(xy));
        let b = self.r1_box(xy);
        let k = self.ax("A1-K", &[x, y]);
        self.mp(b, k)
    }

    /// From `X -> Y` infer `[j]X -> [j]Y`.
    pub fn cstit_mono(&mut self, xy: usize, j: &Agent) -> usize {
        let (x, y) = split_imp(self.formula(xy));
        let b = self.r2_cstit(xy, j);
        let k = self.ax_with("A1-Kj", &[x, y], &[], Some(j));
        self.mp(b, k)
    }

    /// `[]A -> [][]A`, from the T and 5 schemes.
    pub fn box4(&mut self, a: Formula) -> usize {
        let ba = Formula::nec(a.clone());
        let nba = Formula::not(ba.clone());
        let pba = Formula::not(Formula::nec(nba.clone())); // <>[]A
        // []A -> <>[]A
        let t = self.ax("A1-T", std::slice::from_ref(&nba));
        let c = self.contra(t);
        let d = self.dni(ba.clone());
        let up = self.hs(d, c);
        // <>[]A -> []<>[]A
        let five = self.ax("A1-5", std::slice::from_ref(&nba));
        let up2 = self.hs(up, five);
        // <>[]A -> []A, boxed
        let five_a = self.ax("A1-5", &[a]);
        let c2 = self.contra(five_a);
        let dne = self.ax("A0-10", &[ba]);
        let down = self.hs(c2, dne);
        debug_assert_eq!(split_imp(self.formula(down)).0, pba);
        let boxed = self.box_mono(down);
        self.hs(up2, boxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofkit::{check_proof, ConstantSpecification};

    fn accepts(b: ProofBuilder, expected: &str) {
        let p = b.finish();
        let concl = check_proof(&p, &ConstantSpecification::empty(), Mode::Pi).unwrap();
        let ag = p.agents.clone();
        assert_eq!(concl, crate::syntax::parse_formula(expected, &ag).unwrap().normalize());
    }

    fn ag() -> AgentSet {
        AgentSet::new(["i", "j"]).unwrap()
    }

    #[test]
    fn propositional_helpers() {
        let p = Formula::atom("p");
        let mut b = ProofBuilder::new(ag());
        b.identity(p.clone());
        accepts(b, "p -> p");
        let mut b = ProofBuilder::new(ag());
        b.dni(p.clone());
        accepts(b, "p -> ~~p");
        let mut b = ProofBuilder::new(ag());
        b.lem(p.clone());
        accepts(b, "p | ~p");
    }

    #[test]
    fn modal_helpers() {
        let p = Formula::atom("p");
        let mut b = ProofBuilder::new(ag());
        b.box4(p.clone());
        accepts(b, "[]p -> [][]p");
        let mut b = ProofBuilder::new(ag());
        let id = b.identity(p.clone());
        b.r2_cstit(id, &Agent::new("j"));
        accepts(b, "[j](p -> p)");
    }
}
