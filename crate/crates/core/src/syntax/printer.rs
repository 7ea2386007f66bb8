use std::fmt::{self, Write};

use super::ast::{Formula, Term};

const PREC_IMP: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;

const TPREC_SUM: u8 = 1;
const TPREC_APP: u8 = 2;
const TPREC_ATOM: u8 = 3;

pub fn print_term(t: &Term) -> String {
    t.to_string()
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

/// Prints with every compound subformula and subterm parenthesised.
pub fn print_formula_full(f: &Formula) -> String {
    let mut s = String::new();
    write_full(&mut s, f).expect("writing to a String");
    s
}

/// Term text without blanks, for whitespace-separated file formats.
pub fn print_term_compact(t: &Term) -> String {
    t.to_string().replace(' ', "")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, TPREC_SUM)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, PREC_IMP)
    }
}

fn term_prec(t: &Term) -> u8 {
    match t {
        Term::Sum(..) => TPREC_SUM,
        Term::App(..) => TPREC_APP,
        _ => TPREC_ATOM,
    }
}

fn write_term<W: Write>(w: &mut W, t: &Term, min: u8) -> fmt::Result {
    let paren = term_prec(t) < min;
    if paren {
        w.write_char('(')?;
    }
    match t {
        Term::Var(n) | Term::Const(n) => w.write_str(n)?,
        Term::Sum(l, r) => {
            write_term(w, l, TPREC_SUM)?;
            w.write_str(" + ")?;
            write_term(w, r, TPREC_APP)?;
        }
        Term::App(l, r) => {
            write_term(w, l, TPREC_APP)?;
            w.write_char('*')?;
            write_term(w, r, TPREC_ATOM)?;
        }
        Term::Check(inner) => {
            w.write_char('!')?;
            write_term(w, inner, TPREC_ATOM)?;
        }
    }
    if paren {
        w.write_char(')')?;
    }
    Ok(())
}

/// Terms in prefix position (`t:A`, `E t`) are parenthesised unless atomic
/// or a proof check.
fn write_prefix_term<W: Write>(w: &mut W, t: &Term) -> fmt::Result {
    write_term(w, t, TPREC_ATOM)
}

fn formula_prec(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) => PREC_IMP,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        _ => PREC_UNARY,
    }
}

fn write_formula<W: Write>(w: &mut W, f: &Formula, min: u8) -> fmt::Result {
    let paren = formula_prec(f) < min;
    if paren {
        w.write_char('(')?;
    }
    match f {
        Formula::Atom(n) => w.write_str(n)?,
        Formula::Falsum => w.write_str("false")?,
        Formula::Imp(a, b) => {
            write_formula(w, a, PREC_OR)?;
            w.write_str(" -> ")?;
            write_formula(w, b, PREC_IMP)?;
        }
        Formula::Or(a, b) => {
            write_formula(w, a, PREC_AND)?;
            w.write_str(" | ")?;
            write_formula(w, b, PREC_OR)?;
        }
        Formula::And(a, b) => {
            write_formula(w, a, PREC_UNARY)?;
            w.write_str(" & ")?;
            write_formula(w, b, PREC_AND)?;
        }
        Formula::Neg(a) => prefix(w, "~", a)?,
        Formula::Nec(a) => prefix(w, "[]", a)?,
        Formula::Poss(a) => prefix(w, "<>", a)?,
        Formula::Know(a) => prefix(w, "K", a)?,
        Formula::Cstit(j, a) => prefix(w, &format!("[{j}]"), a)?,
        Formula::CstitDual(j, a) => prefix(w, &format!("<{j}>"), a)?,
        Formula::Just(t, a) => {
            write_prefix_term(w, t)?;
            w.write_char(':')?;
            write_formula(w, a, PREC_UNARY)?;
        }
        Formula::Prove(j, t, a) => {
            write!(w, "Prove({j}, ")?;
            write_term(w, t, TPREC_SUM)?;
            w.write_str(", ")?;
            write_formula(w, a, PREC_IMP)?;
            w.write_char(')')?;
        }
        Formula::Proven(t, a) => {
            w.write_str("Proven(")?;
            write_term(w, t, TPREC_SUM)?;
            w.write_str(", ")?;
            write_formula(w, a, PREC_IMP)?;
            w.write_char(')')?;
        }
        Formula::Et(t) => {
            w.write_char('E')?;
            write_prefix_term(w, t)?;
        }
    }
    if paren {
        w.write_char(')')?;
    }
    Ok(())
}

fn prefix<W: Write>(w: &mut W, op: &str, a: &Formula) -> fmt::Result {
    w.write_str(op)?;
    write_formula(w, a, PREC_UNARY)
}

fn write_term_full<W: Write>(w: &mut W, t: &Term) -> fmt::Result {
    match t {
        Term::Var(n) | Term::Const(n) => w.write_str(n),
        Term::Sum(l, r) => {
            w.write_char('(')?;
            write_term_full(w, l)?;
            w.write_str(" + ")?;
            write_term_full(w, r)?;
            w.write_char(')')
        }
        Term::App(l, r) => {
            w.write_char('(')?;
            write_term_full(w, l)?;
            w.write_char('*')?;
            write_term_full(w, r)?;
            w.write_char(')')
        }
        Term::Check(inner) => {
            w.write_str("!(")?;
            write_term_full(w, inner)?;
            w.write_char(')')
        }
    }
}

fn write_full<W: Write>(w: &mut W, f: &Formula) -> fmt::Result {
    let unary = |w: &mut W, op: &str, a: &Formula| -> fmt::Result {
        w.write_str(op)?;
        w.write_char('(')?;
        write_full(w, a)?;
        w.write_char(')')
    };
    let binary = |w: &mut W, op: &str, a: &Formula, b: &Formula| -> fmt::Result {
        w.write_char('(')?;
        write_full(w, a)?;
        w.write_str(op)?;
        write_full(w, b)?;
        w.write_char(')')
    };
    match f {
        Formula::Atom(n) => w.write_str(n),
        Formula::Falsum => w.write_str("false"),
        Formula::Imp(a, b) => binary(w, " -> ", a, b),
        Formula::Or(a, b) => binary(w, " | ", a, b),
        Formula::And(a, b) => binary(w, " & ", a, b),
        Formula::Neg(a) => unary(w, "~", a),
        Formula::Nec(a) => unary(w, "[]", a),
        Formula::Poss(a) => unary(w, "<>", a),
        Formula::Know(a) => unary(w, "K", a),
        Formula::Cstit(j, a) => unary(w, &format!("[{j}]"), a),
        Formula::CstitDual(j, a) => unary(w, &format!("<{j}>"), a),
        Formula::Just(t, a) => {
            w.write_char('(')?;
            write_term_full(w, t)?;
            w.write_str("):(")?;
            write_full(w, a)?;
            w.write_char(')')
        }
        Formula::Prove(j, t, a) => {
            write!(w, "Prove({j}, ")?;
            write_term_full(w, t)?;
            w.write_str(", ")?;
            write_full(w, a)?;
            w.write_char(')')
        }
        Formula::Proven(t, a) => {
            w.write_str("Proven(")?;
            write_term_full(w, t)?;
            w.write_str(", ")?;
            write_full(w, a)?;
            w.write_char(')')
        }
        Formula::Et(t) => {
            w.write_str("E(")?;
            write_term_full(w, t)?;
            w.write_char(')')
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, AgentSet};

    #[test]
    fn canonical_text() {
        let p = Formula::atom("p");
        let f = Formula::know(Formula::and(
            Formula::poss(p.clone()),
            Formula::poss(Formula::not(p.clone())),
        ));
        assert_eq!(print_formula(&f), "K(<>p & <>~p)");
        assert_eq!(print_formula(&p), "p");
        let t = Term::sum(
            Term::check(Term::var("x")),
            Term::app(Term::var("y"), Term::var("z")),
        );
        assert_eq!(print_term(&t), "!x + y*z");
        assert_eq!(print_term_compact(&t), "!x+y*z");
    }

    #[test]
    fn minimal_parentheses() {
        let ag = AgentSet::new(["i", "j"]).unwrap();
        for s in [
            "(p -> q) -> p",
            "p -> q -> p",
            "(p | q) & p",
            "p & q | p",
            "~(p & q)",
            "(s*t):q",
            "!t:t:p & Kp",
            "K(p -> q) -> Kp -> Kq",
            "<j>(~Prove(i, t, p) & ~Prove(j, t, p))",
            "Prove(j, x + y, p -> q)",
        ] {
            let f = parse_formula(s, &ag).unwrap();
            assert_eq!(print_formula(&f), s, "canonical form of {s}");
        }
    }

    #[test]
    fn full_print_reparses() {
        let ag = AgentSet::new(["j"]).unwrap();
        let f = parse_formula("K(~Proven(x, p) | Proven(y, q)) -> ~Prove(j, x, p)", &ag).unwrap();
        let full = print_formula_full(&f);
        assert_eq!(parse_formula(&full, &ag).unwrap(), f);
    }
}
