use proptest::prelude::*;

use jstit::syntax::{
    parse_formula, parse_formula_with, parse_term, print_formula, print_formula_full, print_term, Agent, AgentSet,
    Formula, ParseOptions, SyntaxError, Term,
};

fn agents() -> AgentSet {
    AgentSet::new(["i", "j"]).unwrap()
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
        prop::sample::select(vec!["c1", "c2", "d"]).prop_map(Term::constant),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::sum(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::app(a, b)),
            inner.prop_map(Term::check),
        ]
    })
}

fn formula(et: bool) -> impl Strategy<Value = Formula> {
    let atom = prop::sample::select(vec!["p", "q", "r"]).prop_map(Formula::atom);
    let leaf = if et {
        prop_oneof![3 => atom, 1 => Just(Formula::Falsum), 1 => term().prop_map(Formula::Et)].boxed()
    } else {
        prop_oneof![4 => atom, 1 => Just(Formula::Falsum)].boxed()
    };
    let agent = prop::sample::select(vec!["i", "j"]).prop_map(Agent::new);
    leaf.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            inner.clone().prop_map(Formula::nec),
            inner.clone().prop_map(Formula::poss),
            (agent.clone(), inner.clone()).prop_map(|(j, a)| Formula::cstit(j, a)),
            (agent.clone(), inner.clone()).prop_map(|(j, a)| Formula::cstit_dual(j, a)),
            inner.clone().prop_map(Formula::know),
            (term(), inner.clone()).prop_map(|(t, a)| Formula::just(t, a)),
            (agent.clone(), term(), inner.clone()).prop_map(|(j, t, a)| Formula::prove(j, t, a)),
            (term(), inner).prop_map(|(t, a)| Formula::proven(t, a)),
        ]
    })
}

fn parse_et(text: &str) -> Result<Formula, SyntaxError> {
    let a = agents();
    parse_formula_with(text, ParseOptions::new(&a).with_et(true))
}

proptest! {
    #[test]
    fn printed_formulas_parse_back(f in formula(false)) {
        let text = print_formula(&f);
        prop_assert_eq!(parse_formula(&text, &agents()).unwrap(), f.clone());
        prop_assert_eq!(parse_formula(&print_formula_full(&f), &agents()).unwrap(), f);
    }

    #[test]
    fn et_formulas_round_trip_with_the_extension(f in formula(true)) {
        prop_assert_eq!(parse_et(&print_formula(&f)).unwrap(), f);
    }

    #[test]
    fn printed_terms_parse_back(t in term()) {
        prop_assert_eq!(parse_term(&print_term(&t)).unwrap(), t);
    }

    #[test]
    fn normalize_is_idempotent(f in formula(true)) {
        let n = f.normalize();
        prop_assert_eq!(n.normalize(), n.clone());
        let mut has_dual = false;
        n.visit(&mut |g| has_dual |= matches!(g, Formula::Poss(_) | Formula::CstitDual(..)));
        prop_assert!(!has_dual);
    }
}

#[test]
fn binary_connectives_and_precedence() {
    let a = agents();
    let f = parse_formula("p & q -> r | ~p", &a).unwrap();
    assert_eq!(
        f,
        Formula::imp(
            Formula::and(Formula::atom("p"), Formula::atom("q")),
            Formula::or(Formula::atom("r"), Formula::not(Formula::atom("p")))
        )
    );
    let g = parse_formula("p -> q -> r", &a).unwrap();
    assert_eq!(g, Formula::imp(Formula::atom("p"), Formula::imp(Formula::atom("q"), Formula::atom("r"))));
}

#[test]
fn modal_operators_parse() {
    let a = agents();
    let f = parse_formula("[j]Prove(i, x + c1, [] K (x*y):p)", &a).unwrap();
    let inner = Formula::nec(Formula::know(Formula::just(
        Term::app(Term::var("x"), Term::var("y")),
        Formula::atom("p"),
    )));
    let want = Formula::cstit(
        Agent::new("j"),
        Formula::prove(Agent::new("i"), Term::sum(Term::var("x"), Term::constant("c1")), inner),
    );
    assert_eq!(f, want);
}

#[test]
fn unknown_agents_are_rejected() {
    let err = parse_formula("[k]p", &agents()).unwrap_err();
    assert!(matches!(err, SyntaxError::UnknownAgent { ref name, .. } if name == "k"), "{err}");
}

#[test]
fn the_e_atom_needs_the_extension() {
    assert!(matches!(parse_formula("E x", &agents()), Err(SyntaxError::EtDisabled { .. })));
    assert_eq!(parse_et("E x").unwrap(), Formula::Et(Term::var("x")));
}

#[test]
fn malformed_input_reports_a_position() {
    for bad in ["p &", "(p", "x:", "Prove(j, x)", "p q", ""] {
        match parse_formula(bad, &agents()) {
            Err(SyntaxError::Parse { line, .. }) => assert_eq!(line, 1, "{bad}"),
            other => panic!("{bad:?} gave {other:?}"),
        }
    }
}

#[test]
fn agent_sets_reject_duplicates_and_empties() {
    assert!(matches!(AgentSet::new(["j", "j"]), Err(SyntaxError::DuplicateAgent(_))));
    assert!(matches!(AgentSet::new(Vec::<String>::new()), Err(SyntaxError::EmptyAgentSet)));
}
