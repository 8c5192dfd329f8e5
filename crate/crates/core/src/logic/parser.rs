// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::{Formula, Term};
use crate::structures::{Signature, SignatureBuilder, SymbolKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownSymbol(String),
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    Misuse(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::UnknownSymbol(s) => write!(f, "unknown symbol `{s}`"),
            ParseErrorKind::ArityMismatch {
                name,
                expected,
                found,
            } => {
                write!(
                    f,
                    "arity mismatch: `{name}` takes {expected} argument(s), found {found}"
                )
            }
            ParseErrorKind::Misuse(m) => f.write_str(m),
        }
    }
}

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

impl Pos {
    fn error(self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            kind,
        }
    }

    fn syntax(self, msg: impl Into<String>) -> ParseError {
        self.error(ParseErrorKind::Syntax(msg.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    And,
    Or,
    Not,
    Arrow,
    DoubleArrow,
    Eq,
    Neq,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Not => f.write_str("`!`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::DoubleArrow => f.write_str("`<->`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Neq => f.write_str("`!=`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '.' => (Tok::Dot, 1),
            '&' => (Tok::And, 1),
            '|' => (Tok::Or, 1),
            '=' => (Tok::Eq, 1),
            '!' if next == Some('=') => (Tok::Neq, 2),
            '!' => (Tok::Not, 1),
            '-' if next == Some('>') => (Tok::Arrow, 2),
            '<' if next == Some('-') && chars.get(i + 2) == Some(&'>') => (Tok::DoubleArrow, 3),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                (Tok::Ident(chars[start..j].iter().collect()), j - start)
            }
            other => return Err(pos.syntax(format!("unexpected character `{other}`"))),
        };
        out.push((tok, pos));
        i += len;
        col += len;
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

#[derive(Debug, Clone)]
enum RawTerm {
    Name(String, Pos),
    App(String, Pos, Vec<RawTerm>),
}

#[derive(Debug, Clone)]
enum Raw {
    True,
    False,
    Atom(String, Pos, Vec<RawTerm>),
    Eq(RawTerm, RawTerm, bool),
    Not(Box<Raw>),
    And(Vec<Raw>),
    Or(Vec<Raw>),
    Implies(Box<Raw>, Box<Raw>),
    Iff(Box<Raw>, Box<Raw>),
    Forall(String, Pos, Box<Raw>),
    Exists(String, Pos, Box<Raw>),
    ExistsSet(String, Pos, Box<Raw>),
}

const KEYWORDS: [&str; 5] = ["forall", "exists", "existsSet", "true", "false"];

fn is_var_name(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_lowercase())
}

fn is_set_name(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_uppercase())
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let (tok, pos) = self.bump();
        if tok == want {
            Ok(())
        } else {
            Err(pos.syntax(format!("expected {want}, found {tok}")))
        }
    }

    fn formula(&mut self) -> Result<Raw, ParseError> {
        if let Tok::Ident(kw) = self.peek() {
            match kw.as_str() {
                "forall" | "exists" => return self.quantifier(),
                "existsSet" => return self.set_quantifier(),
                _ => {}
            }
        }
        self.iff()
    }

    fn quantifier(&mut self) -> Result<Raw, ParseError> {
        let (Tok::Ident(kw), _) = self.bump() else {
            unreachable!()
        };
        let mut vars = Vec::new();
        while let Tok::Ident(name) = self.peek().clone() {
            let pos = self.pos();
            if KEYWORDS.contains(&name.as_str()) || !is_var_name(&name) {
                return Err(pos.syntax(format!("`{name}` is not a variable name")));
            }
            vars.push((name, pos));
            self.bump();
        }
        if vars.is_empty() {
            return Err(self
                .pos()
                .syntax(format!("expected a variable after `{kw}`")));
        }
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(vars.into_iter().rev().fold(body, |acc, (v, p)| {
            if kw == "forall" {
                Raw::Forall(v, p, Box::new(acc))
            } else {
                Raw::Exists(v, p, Box::new(acc))
            }
        }))
    }

    fn set_quantifier(&mut self) -> Result<Raw, ParseError> {
        self.bump();
        let pos = self.pos();
        let name = match self.bump().0 {
            Tok::Ident(n) if is_set_name(&n) => n,
            other => return Err(pos.syntax(format!("expected a set variable, found {other}"))),
        };
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(Raw::ExistsSet(name, pos, Box::new(body)))
    }

    fn iff(&mut self) -> Result<Raw, ParseError> {
        let mut left = self.imp()?;
        while *self.peek() == Tok::DoubleArrow {
            self.bump();
            let right = self.imp()?;
            left = Raw::Iff(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn imp(&mut self) -> Result<Raw, ParseError> {
        let left = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.imp()?;
            return Ok(Raw::Implies(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Raw, ParseError> {
        let mut parts = vec![self.and()?];
        while *self.peek() == Tok::Or {
            self.bump();
            parts.push(self.and()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Raw::Or(parts)
        })
    }

    fn and(&mut self) -> Result<Raw, ParseError> {
        let mut parts = vec![self.neg()?];
        while *self.peek() == Tok::And {
            self.bump();
            parts.push(self.neg()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Raw::And(parts)
        })
    }

    fn neg(&mut self) -> Result<Raw, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Raw::Not(Box::new(self.neg()?)))
            }
            Tok::Ident(kw) if matches!(kw.as_str(), "forall" | "exists" | "existsSet") => {
                self.formula()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Raw, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(kw) if kw == "true" => {
                self.bump();
                Ok(Raw::True)
            }
            Tok::Ident(kw) if kw == "false" => {
                self.bump();
                Ok(Raw::False)
            }
            Tok::Ident(_) => {
                let t = self.term()?;
                match self.peek() {
                    Tok::Eq | Tok::Neq => {
                        let negated = *self.peek() == Tok::Neq;
                        self.bump();
                        let rhs = self.term()?;
                        Ok(Raw::Eq(t, rhs, negated))
                    }
                    _ => match t {
                        RawTerm::App(name, p, args) => Ok(Raw::Atom(name, p, args)),
                        RawTerm::Name(name, p) => {
                            Err(p.syntax(format!("expected `(`, `=` or `!=` after `{name}`")))
                        }
                    },
                }
            }
            other => Err(pos.syntax(format!("expected a formula, found {other}"))),
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let (tok, pos) = self.bump();
        let name = match tok {
            Tok::Ident(n) if !KEYWORDS.contains(&n.as_str()) => n,
            other => return Err(pos.syntax(format!("expected a term, found {other}"))),
        };
        if *self.peek() != Tok::LParen {
            return Ok(RawTerm::Name(name, pos));
        }
        self.bump();
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(RawTerm::App(name, pos, args))
    }
}

fn parse_raw(text: &str) -> Result<Raw, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let f = p.formula()?;
    match p.peek() {
        Tok::End => Ok(f),
        other => Err(p.pos().syntax(format!("unexpected {other} after formula"))),
    }
}

/// Symbol table used during resolution: either a fixed signature or one
/// being inferred from the formula.
enum Symbols<'a> {
    Fixed(&'a Signature),
    Inferred {
        order: Vec<(String, SymbolKind)>,
        kinds: HashMap<String, SymbolKind>,
    },
}

impl Symbols<'_> {
    fn lookup(&self, name: &str) -> Option<SymbolKind> {
        match self {
            Symbols::Fixed(sig) => sig.lookup(name),
            Symbols::Inferred { kinds, .. } => kinds.get(name).copied(),
        }
    }

    fn arity(&self, kind: SymbolKind) -> usize {
        match (self, kind) {
            (Symbols::Fixed(sig), SymbolKind::Predicate(i)) => sig.predicates()[i].arity,
            (Symbols::Fixed(sig), SymbolKind::Function(i)) => sig.functions()[i].arity,
            (
                Symbols::Inferred { order, .. },
                SymbolKind::Predicate(i) | SymbolKind::Function(i),
            ) => match order[i].1 {
                SymbolKind::Predicate(a) | SymbolKind::Function(a) => a,
                SymbolKind::Constant(_) => 0,
            },
            (_, SymbolKind::Constant(_)) => 0,
        }
    }

    /// Records a new symbol in inference mode; returns `None` for a fixed
    /// signature. Inferred kinds carry the arity in place of an index.
    fn declare(&mut self, name: &str, kind: SymbolKind) -> Option<SymbolKind> {
        match self {
            Symbols::Fixed(_) => None,
            Symbols::Inferred { order, kinds } => {
                let slot = order.len();
                let stored = match kind {
                    SymbolKind::Predicate(_) => SymbolKind::Predicate(slot),
                    SymbolKind::Function(_) => SymbolKind::Function(slot),
                    SymbolKind::Constant(_) => SymbolKind::Constant(slot),
                };
                order.push((name.to_string(), kind));
                kinds.insert(name.to_string(), stored);
                Some(stored)
            }
        }
    }
}

fn kind_word(kind: SymbolKind) -> &'static str {
    match kind {
        SymbolKind::Predicate(_) => "a predicate",
        SymbolKind::Function(_) => "a function",
        SymbolKind::Constant(_) => "a constant",
    }
}

struct Resolver<'a> {
    symbols: Symbols<'a>,
    bound: Vec<String>,
    bound_sets: Vec<String>,
}

impl Resolver<'_> {
    fn check_arity(
        &self,
        name: &str,
        kind: SymbolKind,
        found: usize,
        pos: Pos,
    ) -> Result<(), ParseError> {
        let expected = self.symbols.arity(kind);
        if expected != found {
            return Err(pos.error(ParseErrorKind::ArityMismatch {
                name: name.to_string(),
                expected,
                found,
            }));
        }
        Ok(())
    }

    fn term(&mut self, t: &RawTerm) -> Result<Term, ParseError> {
        match t {
            RawTerm::Name(name, pos) => {
                if self.bound.iter().any(|b| b == name) {
                    return Ok(Term::Var(name.clone()));
                }
                match self.symbols.lookup(name) {
                    Some(SymbolKind::Constant(_)) => Ok(Term::Const(name.clone())),
                    Some(k @ SymbolKind::Function(_)) => {
                        self.check_arity(name, k, 0, *pos)?;
                        unreachable!("function symbols have positive arity")
                    }
                    Some(k) => Err(pos.error(ParseErrorKind::Misuse(format!(
                        "`{name}` is {} symbol, not a term",
                        kind_word(k)
                    )))),
                    None => match self.symbols {
                        Symbols::Fixed(_) if is_var_name(name) => Ok(Term::Var(name.clone())),
                        Symbols::Fixed(_) => {
                            Err(pos.error(ParseErrorKind::UnknownSymbol(name.clone())))
                        }
                        Symbols::Inferred { .. } => {
                            self.symbols.declare(name, SymbolKind::Constant(0));
                            Ok(Term::Const(name.clone()))
                        }
                    },
                }
            }
            RawTerm::App(name, pos, args) => {
                let kind = match self.symbols.lookup(name) {
                    Some(k @ SymbolKind::Function(_)) => k,
                    Some(k) => {
                        return Err(pos.error(ParseErrorKind::Misuse(format!(
                            "`{name}` is {} symbol, not a function",
                            kind_word(k)
                        ))))
                    }
                    None => self
                        .symbols
                        .declare(name, SymbolKind::Function(args.len()))
                        .ok_or_else(|| pos.error(ParseErrorKind::UnknownSymbol(name.clone())))?,
                };
                self.check_arity(name, kind, args.len(), *pos)?;
                let args = args
                    .iter()
                    .map(|a| self.term(a))
                    .collect::<Result<_, _>>()?;
                Ok(Term::App(name.clone(), args))
            }
        }
    }

    fn bind_check(&self, name: &str, pos: Pos) -> Result<(), ParseError> {
        if let (Symbols::Fixed(_), Some(k)) = (&self.symbols, self.symbols.lookup(name)) {
            return Err(pos.error(ParseErrorKind::Misuse(format!(
                "`{name}` is {} symbol and cannot be bound",
                kind_word(k)
            ))));
        }
        Ok(())
    }

    fn formula(&mut self, f: &Raw) -> Result<Formula, ParseError> {
        Ok(match f {
            Raw::True => Formula::True,
            Raw::False => Formula::False,
            Raw::Atom(name, pos, args) => {
                let is_set = self.bound_sets.iter().any(|b| b == name);
                if is_set
                    || (self.symbols.lookup(name).is_none()
                        && is_set_name(name)
                        && args.len() == 1
                        && matches!(self.symbols, Symbols::Fixed(_)))
                {
                    if args.len() != 1 {
                        return Err(pos.error(ParseErrorKind::ArityMismatch {
                            name: name.clone(),
                            expected: 1,
                            found: args.len(),
                        }));
                    }
                    return Ok(Formula::InSet(name.clone(), self.term(&args[0])?));
                }
                let kind = match self.symbols.lookup(name) {
                    Some(k @ SymbolKind::Predicate(_)) => k,
                    Some(k) => {
                        return Err(pos.error(ParseErrorKind::Misuse(format!(
                            "`{name}` is {} symbol, not a predicate",
                            kind_word(k)
                        ))))
                    }
                    None => self
                        .symbols
                        .declare(name, SymbolKind::Predicate(args.len()))
                        .ok_or_else(|| pos.error(ParseErrorKind::UnknownSymbol(name.clone())))?,
                };
                self.check_arity(name, kind, args.len(), *pos)?;
                let args = args
                    .iter()
                    .map(|a| self.term(a))
                    .collect::<Result<_, _>>()?;
                Formula::Pred(name.clone(), args)
            }
            Raw::Eq(a, b, negated) => {
                let eq = Formula::Eq(self.term(a)?, self.term(b)?);
                if *negated {
                    Formula::not(eq)
                } else {
                    eq
                }
            }
            Raw::Not(g) => Formula::not(self.formula(g)?),
            Raw::And(gs) => Formula::and(
                gs.iter()
                    .map(|g| self.formula(g))
                    .collect::<Result<_, _>>()?,
            ),
            Raw::Or(gs) => Formula::or(
                gs.iter()
                    .map(|g| self.formula(g))
                    .collect::<Result<_, _>>()?,
            ),
            Raw::Implies(a, b) => Formula::implies(self.formula(a)?, self.formula(b)?),
            Raw::Iff(a, b) => Formula::iff(self.formula(a)?, self.formula(b)?),
            Raw::Forall(v, pos, body) | Raw::Exists(v, pos, body) => {
                self.bind_check(v, *pos)?;
                self.bound.push(v.clone());
                let inner = self.formula(body);
                self.bound.pop();
                if matches!(f, Raw::Forall(..)) {
                    Formula::forall(v, inner?)
                } else {
                    Formula::exists(v, inner?)
                }
            }
            Raw::ExistsSet(x, pos, body) => {
                self.bind_check(x, *pos)?;
                self.bound_sets.push(x.clone());
                let inner = self.formula(body);
                self.bound_sets.pop();
                Formula::exists_set(x, inner?)
            }
        })
    }
}

/// Parses `text` against a fixed signature. Lowercase names that are not
/// signature symbols are free variables; uppercase unary atoms that are not
/// predicates are set-variable memberships.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let raw = parse_raw(text)?;
    let mut r = Resolver {
        symbols: Symbols::Fixed(sig),
        bound: Vec::new(),
        bound_sets: Vec::new(),
    };
    r.formula(&raw)
}

/// Parses `text` and infers the signature from symbol usage. Unbound names in
/// term position become constants; symbols are listed in order of first use.
pub fn parse_formula_infer(text: &str) -> Result<(Formula, Signature), ParseError> {
    let raw = parse_raw(text)?;
    let mut r = Resolver {
        symbols: Symbols::Inferred {
            order: Vec::new(),
            kinds: HashMap::new(),
        },
        bound: Vec::new(),
        bound_sets: Vec::new(),
    };
    let f = r.formula(&raw)?;
    let Symbols::Inferred { order, .. } = r.symbols else {
        unreachable!()
    };
    let mut b: SignatureBuilder = Signature::builder();
    for (name, kind) in &order {
        if let SymbolKind::Predicate(a) = kind {
            b = b.predicate(name, *a);
        }
    }
    for (name, kind) in &order {
        if let SymbolKind::Function(a) = kind {
            b = b.function(name, *a);
        }
    }
    for (name, kind) in &order {
        if let SymbolKind::Constant(_) = kind {
            b = b.constant(name);
        }
    }
    let sig = b
        .build()
        .map_err(|e| Pos { line: 1, col: 1 }.error(ParseErrorKind::Misuse(e.to_string())))?;
    Ok((f, sig))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph() -> Signature {
        Signature::builder().predicate("R", 2).build().unwrap()
    }

    fn unar() -> Signature {
        Signature::builder().function("F", 1).build().unwrap()
    }

    #[test]
    fn parses_quantifier_prefix() {
        let f = parse_formula("exists x. forall y. R(x,y)", &graph()).unwrap();
        let r = Formula::pred("R", vec![Term::var("x"), Term::var("y")]);
        assert_eq!(f, Formula::exists("x", Formula::forall("y", r.clone())));
        let g = parse_formula("exists x y. R(x,y)", &graph()).unwrap();
        assert_eq!(g, Formula::exists("x", Formula::exists("y", r)));
    }

    #[test]
    fn parses_function_terms() {
        let f = parse_formula("exists x. !(F(x) = x)", &unar()).unwrap();
        let fx = Term::app("F", vec![Term::var("x")]);
        assert_eq!(
            f,
            Formula::exists("x", Formula::not(Formula::eq(fx.clone(), Term::var("x"))))
        );
        let g = parse_formula("exists x. F(x) != x", &unar()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let err = parse_formula("R(x)", &graph()).unwrap_err();
        assert_eq!(
            err.kind,
            ParseErrorKind::ArityMismatch {
                name: "R".into(),
                expected: 2,
                found: 1
            }
        );
        assert_eq!((err.line, err.col), (1, 1));
        assert!(matches!(
            parse_formula("F = x", &unar()).unwrap_err().kind,
            ParseErrorKind::ArityMismatch { .. }
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_formula("exists x.\n  R(x,x) &", &graph()).unwrap_err();
        assert_eq!((err.line, err.col), (2, 11));
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        let err = parse_formula("R(x,y) $", &graph()).unwrap_err();
        assert_eq!((err.line, err.col), (1, 8));
    }

    #[test]
    fn unknown_symbols_are_rejected() {
        let err = parse_formula("S(x,y)", &graph()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownSymbol("S".into()));
        assert!(parse_formula("exists R. true", &graph()).is_err());
    }

    #[test]
    fn connectives_flatten_and_associate() {
        let f = parse_formula("R(x,x) & R(y,y) & (R(x,y) & R(y,x))", &graph()).unwrap();
        assert!(matches!(&f, Formula::And(v) if v.len() == 4));
        let g = parse_formula("true -> false -> true", &graph()).unwrap();
        assert_eq!(
            g,
            Formula::implies(
                Formula::True,
                Formula::implies(Formula::False, Formula::True)
            )
        );
        let h = parse_formula("true <-> false <-> true", &graph()).unwrap();
        assert_eq!(
            h,
            Formula::iff(Formula::iff(Formula::True, Formula::False), Formula::True)
        );
    }

    #[test]
    fn set_variables_resolve() {
        let f = parse_formula("existsSet X. exists x. X(x)", &graph()).unwrap();
        assert_eq!(
            f,
            Formula::exists_set(
                "X",
                Formula::exists("x", Formula::in_set("X", Term::var("x")))
            )
        );
        let free = parse_formula("X(x)", &graph()).unwrap();
        assert_eq!(free, Formula::in_set("X", Term::var("x")));
    }

    #[test]
    fn signature_inference() {
        let (f, sig) = parse_formula_infer("forall x. P(x) -> P(F(x)) & F(c) = c").unwrap();
        assert!(f.is_sentence());
        assert_eq!(sig.to_string(), "{P/1, F/1, c}");
        assert!(parse_formula_infer("P(x) & P(x,x)").is_err());
        assert!(parse_formula_infer("P(x) & F(P(x)) = x").is_err());
    }
}
