//! The dense-time countermodel and the finite-model demonstration.

use std::fmt;

use rayon::prelude::*;

use crate::model::{load_model, FiniteJstitModel, HistoryId, MomentId};
use crate::semantics::{EvalOptions, Evaluator};
use crate::syntax::{parse_formula, AgentSet, Formula};

use super::gen::{gen_model, EvidenceMode, GenParams};

/// The formula that separates dense from discrete time.
pub const PROP1_FORMULA: &str =
    "K(~Proven(x, p) | Proven(y, q)) -> ~Prove(j, x, p) | (y:q -> Proven(y, q) | Prove(j, y, q))";

/// Its antecedent.
pub const PROP1_ANTECEDENT: &str = "K(~Proven(x, p) | Proven(y, q))";

/// What holds at the falsifying pair.
pub const PROP1_WITNESS: &str = "Prove(j, x, p) & y:q & ~Prove(j, y, q) & ~Proven(y, q)";

/// The witness of the failure of the finite model property.
pub const FMP_FORMULA: &str = "K(<>p & <>~p)";

/// The quotient of the dense countermodel, as a model file. `mid` stands for
/// every moment of the open interval between `0` and the end of `h2`; the
/// history through `a` is `h1`, the one through `mid` is `h2`.
pub const PROP1_QUOTIENT: &str = "\
# Quotient of the dense-time countermodel.
# h1 ends in a, h2 ends in mid.
agents: j
moments: -1 0 mid a
order: -1<0<mid 0<a
choice: 0 j : {a} {mid}
act: 0/mid = x
act: mid/mid = x y
evidence: * * = ALL
val: p @ ALL
val: q @ ALL
";

pub fn prop1_agents() -> AgentSet {
    AgentSet::new(["j"]).expect("valid agents")
}

fn parse(text: &str, agents: &AgentSet) -> Formula {
    parse_formula(text, agents).expect("built-in formula parses")
}

/// The quotient model and the formula it falsifies at `(0, h2)`.
pub fn prop1_quotient() -> (FiniteJstitModel, Formula) {
    let model = load_model(PROP1_QUOTIENT).expect("built-in model loads");
    (model, parse(PROP1_FORMULA, &prop1_agents()))
}

/// `h1` or `h2` for the quotient's histories.
pub fn prop1_history_label(model: &FiniteJstitModel, h: HistoryId) -> &'static str {
    if model.history_name(h) == "a" {
        "h1"
    } else {
        "h2"
    }
}

#[derive(Clone, Debug)]
pub struct FmpReport {
    pub models: usize,
    pub pairs: usize,
    /// `(model seed, moment, leaf)` where `K(<>p & <>~p)` held.
    pub witness_true: Vec<(u64, String, String)>,
    /// `(model seed, moment, leaf)` where the separating formula failed.
    pub prop1_false: Vec<(u64, String, String)>,
}

impl FmpReport {
    pub fn holds(&self) -> bool {
        self.witness_true.is_empty() && self.prop1_false.is_empty()
    }
}

impl fmt::Display for FmpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "models: {}, pairs: {}", self.models, self.pairs)?;
        writeln!(f, "{FMP_FORMULA} true at {} pairs", self.witness_true.len())?;
        for (s, m, l) in &self.witness_true {
            writeln!(f, "  seed {s}: ({m},{l})")?;
        }
        writeln!(f, "separating formula false at {} pairs", self.prop1_false.len())?;
        for (s, m, l) in &self.prop1_false {
            writeln!(f, "  seed {s}: ({m},{l})")?;
        }
        write!(f, "{}", if self.holds() { "ok" } else { "FAILED" })
    }
}

/// Parameters of the `k`-th model of a demo or fuzz run started at `seed`:
/// depth 1 to 3 (mostly 3), one or two agents (always including `j`),
/// both evidence modes.
pub fn sample_params(seed: u64, k: usize) -> GenParams {
    let model_seed = seed.wrapping_add(k as u64);
    let agents = if k.is_multiple_of(2) { ["i", "j"].as_slice() } else { ["j"].as_slice() };
    GenParams {
        seed: model_seed,
        max_depth: [3, 2, 3, 1][(k / 2) % 4],
        max_branching: 3,
        agents: AgentSet::new(agents.iter().copied()).expect("valid agents"),
        evidence_mode: if k % 4 < 2 { EvidenceMode::Everything } else { EvidenceMode::SparseClosed },
        ..GenParams::default()
    }
}

fn false_pairs(ev: &mut Evaluator<'_>, f: &Formula, want: bool) -> Vec<(MomentId, HistoryId)> {
    let model = ev.model();
    model
        .pairs()
        .iter()
        .copied()
        .filter(|&(m, h)| ev.eval(m, h, f).expect("formula fits the model") != want)
        .collect()
}

/// Evaluates `K(<>p & <>~p)` and the separating formula at every pair of
/// `n_models` generated models.
pub fn fmp_demo(n_models: usize, seed: u64) -> FmpReport {
    let per_model: Vec<_> = (0..n_models)
        .into_par_iter()
        .map(|k| {
            let params = sample_params(seed, k);
            let model = gen_model(&params).expect("generator yields valid models");
            let mut ev = Evaluator::new(&model, EvalOptions::default()).expect("valid model");
            let witness = parse(FMP_FORMULA, model.agents());
            let a = parse(PROP1_FORMULA, model.agents());
            let name = |(m, h): (MomentId, HistoryId)| {
                (params.seed, model.moment_name(m).to_string(), model.history_name(h).to_string())
            };
            let w: Vec<_> = false_pairs(&mut ev, &witness, false).into_iter().map(name).collect();
            let p: Vec<_> = false_pairs(&mut ev, &a, true).into_iter().map(name).collect();
            (model.pairs().len(), w, p)
        })
        .collect();
    let mut report = FmpReport { models: n_models, pairs: 0, witness_true: vec![], prop1_false: vec![] };
    for (pairs, w, p) in per_model {
        report.pairs += pairs;
        report.witness_true.extend(w);
        report.prop1_false.extend(p);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate, Constraint};

    #[test]
    fn quotient_falsifies_the_formula_at_0_h2() {
        let (model, a) = prop1_quotient();
        let (m, h) = model.resolve_pair("0", "mid").unwrap();
        let mut ev = Evaluator::new(&model, EvalOptions::waived()).unwrap();
        assert!(!ev.eval(m, h, &a).unwrap());
        assert!(ev.eval(m, h, &parse(PROP1_ANTECEDENT, &prop1_agents())).unwrap());
        assert!(ev.eval(m, h, &parse(PROP1_WITNESS, &prop1_agents())).unwrap());
        assert_eq!(prop1_history_label(&model, h), "h2");
    }

    #[test]
    fn quotient_breaks_only_the_no_new_proofs_constraint() {
        let (model, _) = prop1_quotient();
        let report = validate(&model);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].constraint, Constraint::NoNewProofsGuaranteed);
        assert_eq!(report.violations[0].headline(), "no-new-proofs-guaranteed @ mid");
    }

    #[test]
    fn small_fmp_run() {
        let r = fmp_demo(12, 7);
        assert!(r.holds(), "{r}");
    }
}
