//! Proof polynomials and formulas: AST, parser, printer.
//!
//! Surface syntax (ASCII):
//!
//! ```text
//! formula := imp ; imp := or ("->" imp)? ; or := and ("|" or)? ; and := unary ("&" and)? ;
//! unary   := "~" unary | "[]" unary | "<>" unary | "[" AGENT "]" unary | "<" AGENT ">" unary
//!          | "K" unary | term ":" unary | atom ;
//! atom    := IDENT | "false" | "(" formula ")" | "Prove(" AGENT "," term "," formula ")"
//!          | "Proven(" term "," formula ")" | "E" term ;
//! term    := app ("+" app)* ; app := bang ("*" bang)* ; bang := "!" bang | TVAR | TCONST | "(" term ")"
//! ```
//!
//! `->`, `|` and `&` nest to the right; `+` and `*` nest to the left. Proof
//! variables are a single letter among `s t x y z` optionally followed by
//! digits, proof constants likewise with `c d`. Every other lowercase
//! identifier is a propositional atom (or an agent, by position).

mod ast;
mod lexer;
mod parser;
mod printer;

use thiserror::Error;

pub use ast::{Agent, AgentSet, Formula, Term};
pub use parser::{
    is_atom_name, is_term_const, is_term_var, parse_formula, parse_formula_with, parse_term, AgentPolicy,
    ParseOptions,
};
pub use printer::{print_formula, print_formula_full, print_term, print_term_compact};

pub(crate) use parser::parse_formula_with as parse_with;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{line}:{column}: agent '{name}' is not in the agent set")]
    UnknownAgent { name: String, line: usize, column: usize },
    #[error("{line}:{column}: the E atom requires the announcement extension")]
    EtDisabled { line: usize, column: usize },
    #[error("'{0}' is not a valid agent name")]
    BadAgent(String),
    #[error("agent '{0}' listed twice")]
    DuplicateAgent(String),
    #[error("the agent set must not be empty")]
    EmptyAgentSet,
}

/// Parses a scheme pattern: uppercase letters are formula metavariables and
/// any agent name is accepted.
pub(crate) fn parse_pattern(text: &str) -> Formula {
    parse_with(text, ParseOptions::patterns())
        .unwrap_or_else(|e| panic!("bad built-in pattern {text:?}: {e}"))
}
