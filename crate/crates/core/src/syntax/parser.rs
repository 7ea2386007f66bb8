use super::ast::{Agent, AgentSet, Formula, Term};
use super::lexer::{tokenize, Spanned, Tok};
use super::SyntaxError;

/// Which agent names the parser accepts.
#[derive(Clone, Copy, Debug)]
pub enum AgentPolicy<'a> {
    /// Only members of the given community.
    Within(&'a AgentSet),
    /// Any lowercase identifier.
    Any,
}

#[derive(Clone, Copy, Debug)]
pub struct ParseOptions<'a> {
    pub agents: AgentPolicy<'a>,
    /// Accept the `E t` announcement atom.
    pub enable_et: bool,
    /// Accept single uppercase letters as formula metavariables.
    pub(crate) metas: bool,
}

impl<'a> ParseOptions<'a> {
    pub fn new(agents: &'a AgentSet) -> Self {
        ParseOptions { agents: AgentPolicy::Within(agents), enable_et: false, metas: false }
    }

    pub fn any_agents() -> Self {
        ParseOptions { agents: AgentPolicy::Any, enable_et: false, metas: false }
    }

    pub fn with_et(mut self, enable: bool) -> Self {
        self.enable_et = enable;
        self
    }

    pub(crate) fn patterns() -> Self {
        ParseOptions { agents: AgentPolicy::Any, enable_et: false, metas: true }
    }
}

/// `x`, `y1`, `t` ... : proof variables.
pub fn is_term_var(word: &str) -> bool {
    lexical_class(word, &['s', 't', 'x', 'y', 'z'])
}

/// `c`, `d2` ... : proof constants.
pub fn is_term_const(word: &str) -> bool {
    lexical_class(word, &['c', 'd'])
}

/// Lowercase identifiers that parse as propositional atoms.
pub fn is_atom_name(word: &str) -> bool {
    super::ast::is_lower_ident(word) && word != "false" && !is_term_var(word) && !is_term_const(word)
}

fn lexical_class(word: &str, heads: &[char]) -> bool {
    let mut chars = word.chars();
    matches!(chars.next(), Some(c) if heads.contains(&c)) && chars.all(|c| c.is_ascii_digit())
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(text, ParseOptions::any_agents())?;
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_formula(text: &str, agents: &AgentSet) -> Result<Formula, SyntaxError> {
    parse_formula_with(text, ParseOptions::new(agents))
}

pub fn parse_formula_with(text: &str, opts: ParseOptions<'_>) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text, opts)?;
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    opts: ParseOptions<'a>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, opts: ParseOptions<'a>) -> Result<Self, SyntaxError> {
        Ok(Parser { toks: tokenize(text, opts.metas)?, pos: 0, opts })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let idx = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[idx].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: String) -> SyntaxError {
        let s = &self.toks[self.pos];
        SyntaxError::Parse { line: s.line, column: s.column, message }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            )))
        }
    }

    fn expect_eof(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            t => Err(self.error_here(format!("unexpected {} after end of expression", t.describe()))),
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.conjunction()?;
        if *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.disjunction()?;
            return Ok(Formula::or(lhs, rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.conjunction()?;
            return Ok(Formula::and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::K => {
                self.bump();
                Ok(Formula::know(self.unary()?))
            }
            Tok::LBrack => {
                self.bump();
                if *self.peek() == Tok::RBrack {
                    self.bump();
                    return Ok(Formula::nec(self.unary()?));
                }
                let j = self.agent()?;
                self.expect(Tok::RBrack)?;
                Ok(Formula::cstit(j, self.unary()?))
            }
            Tok::Lt => {
                self.bump();
                if *self.peek() == Tok::Gt {
                    self.bump();
                    return Ok(Formula::poss(self.unary()?));
                }
                let j = self.agent()?;
                self.expect(Tok::Gt)?;
                Ok(Formula::cstit_dual(j, self.unary()?))
            }
            Tok::Bang => self.justification(),
            Tok::Word(w) if is_term_var(&w) || is_term_const(&w) => self.justification(),
            Tok::LParen => {
                // Either a parenthesised proof term followed by ':' or a
                // parenthesised formula.
                let save = self.pos;
                if let Ok(t) = self.term() {
                    if *self.peek() == Tok::Colon {
                        self.bump();
                        return Ok(Formula::just(t, self.unary()?));
                    }
                }
                self.pos = save;
                self.atom()
            }
            _ => self.atom(),
        }
    }

    fn justification(&mut self) -> Result<Formula, SyntaxError> {
        let t = self.term()?;
        self.expect(Tok::Colon)?;
        Ok(Formula::just(t, self.unary()?))
    }

    fn atom(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().clone() {
            Tok::Word(w) => {
                self.bump();
                Ok(Formula::Atom(w))
            }
            Tok::Meta(m) => {
                self.bump();
                Ok(Formula::Atom(m))
            }
            Tok::False => {
                self.bump();
                Ok(Formula::Falsum)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Prove => {
                self.bump();
                self.expect(Tok::LParen)?;
                let j = self.agent()?;
                self.expect(Tok::Comma)?;
                let t = self.term()?;
                self.expect(Tok::Comma)?;
                let a = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(Formula::prove(j, t, a))
            }
            Tok::Proven => {
                self.bump();
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::Comma)?;
                let a = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(Formula::proven(t, a))
            }
            Tok::E => {
                if !self.opts.enable_et {
                    let s = &self.toks[self.pos];
                    return Err(SyntaxError::EtDisabled { line: s.line, column: s.column });
                }
                self.bump();
                Ok(Formula::Et(self.term()?))
            }
            t => Err(self.error_here(format!("expected a formula, found {}", t.describe()))),
        }
    }

    fn agent(&mut self) -> Result<Agent, SyntaxError> {
        let s = self.toks[self.pos].clone();
        match s.tok {
            Tok::Word(w) => {
                let agent = Agent(w);
                if let AgentPolicy::Within(set) = self.opts.agents {
                    if !set.contains(&agent) {
                        return Err(SyntaxError::UnknownAgent {
                            name: agent.0,
                            line: s.line,
                            column: s.column,
                        });
                    }
                }
                self.bump();
                Ok(agent)
            }
            t => Err(self.error_here(format!("expected an agent, found {}", t.describe()))),
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let mut acc = self.term_app()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            acc = Term::sum(acc, self.term_app()?);
        }
        Ok(acc)
    }

    fn term_app(&mut self) -> Result<Term, SyntaxError> {
        let mut acc = self.term_bang()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Term::app(acc, self.term_bang()?);
        }
        Ok(acc)
    }

    fn term_bang(&mut self) -> Result<Term, SyntaxError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Term::check(self.term_bang()?))
            }
            Tok::Word(w) if is_term_var(&w) => {
                self.bump();
                Ok(Term::Var(w))
            }
            Tok::Word(w) if is_term_const(&w) => {
                self.bump();
                Ok(Term::Const(w))
            }
            Tok::LParen if !matches!(self.peek_at(1), Tok::RParen) => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            t => Err(self.error_here(format!("expected a proof term, found {}", t.describe()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn agents() -> AgentSet {
        AgentSet::new(["i", "j"]).unwrap()
    }

    fn f(s: &str) -> Formula {
        parse_formula(s, &agents()).unwrap()
    }

    fn p() -> Formula {
        Formula::atom("p")
    }

    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn term_precedence() {
        assert_eq!(parse_term("x").unwrap(), Term::var("x"));
        assert_eq!(
            parse_term("!x + y*z").unwrap(),
            Term::sum(Term::check(Term::var("x")), Term::app(Term::var("y"), Term::var("z")))
        );
        assert_eq!(
            parse_term("x*(y+z)").unwrap(),
            Term::app(Term::var("x"), Term::sum(Term::var("y"), Term::var("z")))
        );
        assert_eq!(
            parse_term("x + y + z").unwrap(),
            Term::sum(Term::sum(Term::var("x"), Term::var("y")), Term::var("z"))
        );
        assert_eq!(parse_term("c2").unwrap(), Term::constant("c2"));
    }

    #[test]
    fn term_errors() {
        assert!(parse_term("p").is_err());
        assert!(parse_term("x +").is_err());
        assert!(parse_term("x $ y").is_err());
    }

    #[test]
    fn formula_examples() {
        assert_eq!(
            f("K(<>p & <>~p)"),
            Formula::know(Formula::and(Formula::poss(p()), Formula::poss(Formula::not(p()))))
        );
        assert_eq!(
            f("Prove(j, x*y, p -> q)"),
            Formula::prove(
                Agent::new("j"),
                Term::app(Term::var("x"), Term::var("y")),
                Formula::imp(p(), q())
            )
        );
        assert_eq!(f("[]p -> [j]p"), Formula::imp(Formula::nec(p()), Formula::cstit(Agent::new("j"), p())));
    }

    #[test]
    fn binary_associativity() {
        assert_eq!(f("p -> q -> p"), Formula::imp(p(), Formula::imp(q(), p())));
        assert_eq!(f("p | q | p"), Formula::or(p(), Formula::or(q(), p())));
        assert_eq!(f("p & q | p"), Formula::or(Formula::and(p(), q()), p()));
        assert_eq!(f("~p & q"), Formula::and(Formula::not(p()), q()));
    }

    #[test]
    fn justification_forms() {
        let x = Term::var("x");
        assert_eq!(f("x:p"), Formula::just(x.clone(), p()));
        assert_eq!(
            f("(s*t):q"),
            Formula::just(Term::app(Term::var("s"), Term::var("t")), q())
        );
        assert_eq!(f("s*t:q"), f("(s*t):q"));
        assert_eq!(
            f("!x:x:p"),
            Formula::just(Term::check(x.clone()), Formula::just(x.clone(), p()))
        );
        assert_eq!(f("(p)"), p());
        assert_eq!(f("(x + y):p"), Formula::just(Term::sum(x, Term::var("y")), p()));
    }

    #[test]
    fn agents_are_checked() {
        match parse_formula("[k]p", &agents()) {
            Err(SyntaxError::UnknownAgent { name, .. }) => assert_eq!(name, "k"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_formula_with("[k]p", ParseOptions::any_agents()).is_ok());
    }

    #[test]
    fn et_is_gated() {
        assert!(matches!(
            parse_formula("Ex", &agents()),
            Err(SyntaxError::EtDisabled { .. })
        ));
        let ag = agents();
        let g = parse_formula_with("[j]Ex & <>~Ex", ParseOptions::new(&ag).with_et(true)).unwrap();
        assert!(g.mentions_et());
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_formula("p &\n  & q", &agents()) {
            Err(SyntaxError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_formula("x", &agents()).is_err());
        assert!(parse_formula("p q", &agents()).is_err());
        assert!(parse_formula("Prove(j, p, q)", &agents()).is_err());
    }
}
