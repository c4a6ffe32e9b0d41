//! Reader for the COPS-style rule format.
//!
//! ```text
//! (CONDITIONTYPE ORIENTED)
//! (VAR x y)
//! (RULES
//!   min(x,y) -> x | le(x,y) == true
//! )
//! ```
//!
//! Lines starting with `%` are comments. Identifiers are maximal runs of
//! characters other than whitespace, `(`, `)`, `,`, `|` and the tokens `->`
//! and `==`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rules::{Ctrs, Rule};
use crate::term::{Sym, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Bar,
    Arrow,
    Eq,
    Ident(String),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('%') {
            continue;
        }
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = (ln + 1, i + 1);
            let two = |a: char, b: char| c == a && chars.get(i + 1) == Some(&b);
            let single = match c {
                '(' => Some(Tok::Open),
                ')' => Some(Tok::Close),
                ',' => Some(Tok::Comma),
                '|' => Some(Tok::Bar),
                _ => None,
            };
            if c.is_whitespace() {
                i += 1;
            } else if let Some(tok) = single {
                out.push(Token { tok, line: pos.0, column: pos.1 });
                i += 1;
            } else if two('-', '>') || two('=', '=') {
                let tok = if c == '-' { Tok::Arrow } else { Tok::Eq };
                out.push(Token { tok, line: pos.0, column: pos.1 });
                i += 2;
            } else {
                let start = i;
                while i < chars.len() {
                    let d = chars[i];
                    if d.is_whitespace() || "(),|".contains(d) {
                        break;
                    }
                    if (d == '-' || d == '=') && chars.get(i + 1) == Some(&if d == '-' { '>' } else { '=' }) {
                        break;
                    }
                    i += 1;
                }
                let ident: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Ident(ident),
                    line: pos.0,
                    column: pos.1,
                });
            }
        }
    }
    out
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    vars: Vec<String>,
    arities: HashMap<String, usize>,
    end: (usize, usize),
}

impl Parser {
    fn new(src: &str, vars: &[&str]) -> Self {
        let lines = src.lines().count().max(1);
        let last_len = src.lines().last().map(|l| l.chars().count()).unwrap_or(0);
        Parser {
            toks: tokenize(src),
            pos: 0,
            vars: vars.iter().map(|v| v.to_string()).collect(),
            arities: HashMap::new(),
            end: (lines, last_len + 1),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Parse {
            line,
            column,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Open) => "`(`".into(),
            Some(Tok::Close) => "`)`".into(),
            Some(Tok::Comma) => "`,`".into(),
            Some(Tok::Bar) => "`|`".into(),
            Some(Tok::Arrow) => "`->`".into(),
            Some(Tok::Eq) => "`==`".into(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", self.describe()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(format!("expected {what}, found {}", self.describe())),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.error(format!("expected `{kw}`, found {}", self.describe())),
        }
    }

    fn section_is(&self, kw: &str) -> bool {
        self.peek() == Some(&Tok::Open) && matches!(self.peek_at(1), Some(Tok::Ident(s)) if s == kw)
    }

    fn file(&mut self) -> Result<Ctrs> {
        if self.section_is("CONDITIONTYPE") {
            self.pos += 2;
            let (line, column) = self.here();
            let kind = self.ident("condition type")?;
            if kind != "ORIENTED" {
                if kind == "JOIN" || kind == "SEMI-EQUATIONAL" {
                    return Err(Error::UnsupportedSemantics(kind));
                }
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("unknown condition type `{kind}`"),
                });
            }
            self.expect(Tok::Close, "`)`")?;
        }

        self.expect(Tok::Open, "`(`")?;
        self.keyword("VAR")?;
        while let Some(Tok::Ident(_)) = self.peek() {
            let v = self.ident("variable")?;
            if !self.vars.contains(&v) {
                self.vars.push(v);
            }
        }
        self.expect(Tok::Close, "`)` closing VAR")?;

        self.expect(Tok::Open, "`(`")?;
        self.keyword("RULES")?;
        let mut rules = Vec::new();
        while self.peek() != Some(&Tok::Close) {
            if self.peek().is_none() {
                return self.error("unterminated RULES section");
            }
            let label = (rules.len() + 1).to_string();
            rules.push(self.rule(label)?);
        }
        self.expect(Tok::Close, "`)` closing RULES")?;
        if self.peek().is_some() {
            return self.error(format!("unexpected {} after RULES section", self.describe()));
        }
        let declared = self.vars.iter().map(|v| Var::new(v)).collect();
        Ok(Ctrs::new(rules).with_declared_vars(declared))
    }

    fn rule(&mut self, label: String) -> Result<Rule> {
        let (line, column) = self.here();
        let lhs = self.term()?;
        if let Term::Var(x) = &lhs {
            return Err(Error::LhsVariable {
                rule: label,
                var: x.to_string(),
                line,
                column,
            });
        }
        self.expect(Tok::Arrow, "`->`")?;
        let rhs = self.term()?;
        let mut conditions = Vec::new();
        if self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            loop {
                let s = self.term()?;
                self.expect(Tok::Eq, "`==`")?;
                let t = self.term()?;
                conditions.push((s, t));
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        Ok(Rule::new(label, lhs, rhs, conditions))
    }

    fn term(&mut self) -> Result<Term> {
        let (line, column) = self.here();
        let name = self.ident("term")?;
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::Open) {
            self.pos += 1;
            loop {
                args.push(self.term()?);
                match self.peek() {
                    Some(Tok::Comma) => self.pos += 1,
                    Some(Tok::Close) => {
                        self.pos += 1;
                        break;
                    }
                    _ => return self.error(format!("expected `,` or `)`, found {}", self.describe())),
                }
            }
        }
        if self.vars.contains(&name) {
            if !args.is_empty() {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("variable `{name}` applied to arguments"),
                });
            }
            return Ok(Term::Var(Var::new(&name)));
        }
        match self.arities.get(&name) {
            Some(&n) if n != args.len() => {
                return Err(Error::Arity {
                    symbol: name,
                    expected: n,
                    found: args.len(),
                    line,
                    column,
                })
            }
            Some(_) => {}
            None => {
                self.arities.insert(name.clone(), args.len());
            }
        }
        Ok(Term::App(Sym::new(&name), args))
    }
}

/// Parses a rule system in the COPS-style format.
pub fn parse_ctrs(text: &str) -> Result<Ctrs> {
    Parser::new(text, &[]).file()
}

/// Parses a single term; identifiers in `vars` are variables.
pub fn parse_term(text: &str, vars: &[&str]) -> Result<Term> {
    let mut p = Parser::new(text, vars);
    let t = p.term()?;
    if p.peek().is_some() {
        return p.error(format!("unexpected {} after term", p.describe()));
    }
    Ok(t)
}

/// Parses a term using the variables declared by `ctrs`.
pub fn parse_term_in(ctrs: &Ctrs, text: &str) -> Result<Term> {
    let names: Vec<&str> = ctrs.declared_vars().iter().map(Var::as_str).collect();
    let mut p = Parser::new(text, &names);
    for (f, n) in ctrs.signature() {
        p.arities.insert(f.to_string(), *n);
    }
    let t = p.term()?;
    if p.peek().is_some() {
        return p.error(format!("unexpected {} after term", p.describe()));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_system() {
        let r = parse_ctrs("(VAR x)(RULES f(x) -> x)").unwrap();
        assert_eq!(r.rules().len(), 1);
        let rule = &r.rules()[0];
        assert_eq!(rule.label, "1");
        assert_eq!(rule.lhs, Term::app("f", vec![Term::var("x")]));
        assert_eq!(rule.rhs, Term::var("x"));
        assert!(rule.conditions.is_empty());
    }

    #[test]
    fn conditional_rule() {
        let r = parse_ctrs("(VAR x y)(RULES min(x,y) -> x | le(x,y) == true)").unwrap();
        let rule = &r.rules()[0];
        let xy = vec![Term::var("x"), Term::var("y")];
        assert_eq!(rule.lhs, Term::app("min", xy.clone()));
        assert_eq!(
            rule.conditions,
            vec![(Term::app("le", xy), Term::constant("true"))]
        );
    }

    #[test]
    fn lhs_variable_rejected() {
        assert!(matches!(
            parse_ctrs("(VAR x)(RULES x -> a)"),
            Err(Error::LhsVariable { .. })
        ));
    }

    #[test]
    fn arity_mismatch() {
        let e = parse_ctrs("(VAR x)(RULES f(x) -> f(x, x))").unwrap_err();
        assert!(matches!(e, Error::Arity { expected: 1, found: 2, .. }), "{e}");
    }

    #[test]
    fn condition_type_header() {
        assert!(parse_ctrs("(CONDITIONTYPE ORIENTED)(VAR)(RULES a -> b)").is_ok());
        assert_eq!(
            parse_ctrs("(CONDITIONTYPE JOIN)(VAR)(RULES a -> b)").unwrap_err(),
            Error::UnsupportedSemantics("JOIN".into())
        );
        assert_eq!(
            parse_ctrs("(CONDITIONTYPE SEMI-EQUATIONAL)(VAR)(RULES a -> b)").unwrap_err(),
            Error::UnsupportedSemantics("SEMI-EQUATIONAL".into())
        );
    }

    #[test]
    fn tokens_without_spaces_and_comments() {
        let src = "% a comment\n(VAR x)\n(RULES\n f(x)->g(x)|x==a\n% another\n)";
        let r = parse_ctrs(src).unwrap();
        assert_eq!(r.rules()[0].to_string(), "f(x) -> g(x) | x == a");
    }

    #[test]
    fn error_positions() {
        match parse_ctrs("(VAR x)\n(RULES\n  f(x -> x)") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 7)),
            other => panic!("{other:?}"),
        }
        match parse_ctrs("(VAR x)(RULES f(x) x)") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 20)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_ctrs("(VAR x)(RULES f(x) -> x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ctrs(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn variable_with_arguments_rejected() {
        assert!(matches!(
            parse_ctrs("(VAR x)(RULES f(x) -> x(a))"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn round_trip() {
        let src = "(VAR x y)(RULES min(x,y) -> x | le(x,y) == true min(x,y) -> y | le(x,y) == false le(0,y) -> true)";
        let r = parse_ctrs(src).unwrap();
        let again = parse_ctrs(&r.to_cops()).unwrap();
        assert_eq!(r, again);
    }
}
