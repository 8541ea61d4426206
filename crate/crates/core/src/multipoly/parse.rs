//! Text grammars for local functions.
//!
//! Polynomials: `x1..xn`, integer constants, `+ - * ^` and parentheses.
//! Juxtaposition multiplies, so `2x1` is `2*x1`.
//!
//! Boolean expressions: `x1..xn`, `0`, `1`, `!` (not), `&` (and),
//! `^` (xor), `|` (or), parentheses. Precedence from tightest: `! & ^ |`.

use std::fmt;

use super::boolean::BoolExpr;
use super::MPoly;
use crate::error::{Error, Result};
use crate::gf::Field;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(v) => write!(f, "'{v}'"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
        }
    }
}

fn describe(t: &Option<Tok>) -> String {
    t.as_ref()
        .map_or_else(|| "end of input".to_string(), Tok::to_string)
}

fn syntax(message: impl Into<String>) -> Error {
    Error::Syntax {
        line: 0,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s
                .parse()
                .map_err(|_| syntax(format!("number too large: {s}")))?;
            out.push(Tok::Num(v));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().filter(|&&c| c != '_').collect();
            out.push(Tok::Ident(s));
        } else if "+-*^()&|!".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(syntax(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Resolver<'a> {
    n: usize,
    names: &'a [&'a str],
}

impl Resolver<'_> {
    fn resolve(&self, ident: &str) -> Result<usize> {
        if !self.names.is_empty() {
            return self
                .names
                .iter()
                .position(|&n| n == ident)
                .ok_or_else(|| syntax(format!("unknown variable '{ident}'")));
        }
        let idx: usize = ident
            .strip_prefix('x')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| syntax(format!("unknown variable '{ident}'")))?;
        if idx == 0 || idx > self.n {
            return Err(Error::IndexOutOfRange {
                index: idx,
                n: self.n,
            });
        }
        Ok(idx - 1)
    }
}

struct Cursor {
    toks: Vec<Tok>,
    pos: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(syntax(format!("unexpected trailing token {t}"))),
        }
    }
}

/// Algebra a parsed polynomial expression is evaluated into.
pub trait PolyAlgebra: Sized {
    fn constant(&self, c: u64) -> Self;
    fn variable(&self, i: usize) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn power(&self, e: u64) -> Self;
}

/// Parses a polynomial in `n` variables. With an empty `names` list the
/// variables are `x1..xn`; otherwise `names[i]` denotes variable `i`.
pub fn parse_polynomial(field: Field, n: usize, text: &str, names: &[&str]) -> Result<MPoly> {
    parse_into(&MPoly::zero(field, n), n, text, names)
}

/// Parses into any [`PolyAlgebra`]; `seed` supplies the field and arity.
pub fn parse_into<A: PolyAlgebra>(seed: &A, n: usize, text: &str, names: &[&str]) -> Result<A> {
    let mut cur = Cursor {
        toks: tokenize(text)?,
        pos: 0,
    };
    if cur.peek().is_none() {
        return Err(syntax("empty polynomial"));
    }
    let res = Resolver { n, names };
    let p = poly_expr(&mut cur, seed, &res)?;
    cur.finish()?;
    Ok(p)
}

impl PolyAlgebra for MPoly {
    fn constant(&self, c: u64) -> Self {
        MPoly::constant(self.field(), self.arity(), self.field().reduce(c))
    }
    fn variable(&self, i: usize) -> Self {
        MPoly::var(self.field(), self.arity(), i)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn power(&self, e: u64) -> Self {
        self.pow(e)
    }
}

fn poly_expr<A: PolyAlgebra>(cur: &mut Cursor, seed: &A, res: &Resolver) -> Result<A> {
    let mut acc = poly_term(cur, seed, res)?;
    loop {
        if cur.eat('+') {
            acc = acc.plus(&poly_term(cur, seed, res)?);
        } else if cur.eat('-') {
            acc = acc.minus(&poly_term(cur, seed, res)?);
        } else {
            return Ok(acc);
        }
    }
}

fn starts_atom(t: Option<&Tok>) -> bool {
    matches!(
        t,
        Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('('))
    )
}

fn poly_term<A: PolyAlgebra>(cur: &mut Cursor, seed: &A, res: &Resolver) -> Result<A> {
    let mut acc = poly_unary(cur, seed, res)?;
    loop {
        if cur.eat('*') || starts_atom(cur.peek()) {
            acc = acc.times(&poly_unary(cur, seed, res)?);
        } else {
            return Ok(acc);
        }
    }
}

fn poly_unary<A: PolyAlgebra>(cur: &mut Cursor, seed: &A, res: &Resolver) -> Result<A> {
    if cur.eat('-') {
        return Ok(poly_unary(cur, seed, res)?.negate());
    }
    let base = poly_atom(cur, seed, res)?;
    if cur.eat('^') {
        match cur.next() {
            Some(Tok::Num(e)) => Ok(base.power(e)),
            other => Err(syntax(format!(
                "expected exponent, found {}",
                describe(&other)
            ))),
        }
    } else {
        Ok(base)
    }
}

fn poly_atom<A: PolyAlgebra>(cur: &mut Cursor, seed: &A, res: &Resolver) -> Result<A> {
    match cur.next() {
        Some(Tok::Num(v)) => Ok(seed.constant(v)),
        Some(Tok::Ident(name)) => Ok(seed.variable(res.resolve(&name)?)),
        Some(Tok::Sym('(')) => {
            let inner = poly_expr(cur, seed, res)?;
            if !cur.eat(')') {
                return Err(syntax("missing ')'"));
            }
            Ok(inner)
        }
        other => Err(syntax(format!("unexpected {}", describe(&other)))),
    }
}

/// Parses a Boolean expression over `x1..xn`.
pub fn parse_bool(n: usize, text: &str) -> Result<BoolExpr> {
    let mut cur = Cursor {
        toks: tokenize(text)?,
        pos: 0,
    };
    if cur.peek().is_none() {
        return Err(syntax("empty expression"));
    }
    let res = Resolver { n, names: &[] };
    let e = bool_or(&mut cur, &res)?;
    cur.finish()?;
    Ok(e)
}

fn bool_or(cur: &mut Cursor, res: &Resolver) -> Result<BoolExpr> {
    let mut acc = bool_xor(cur, res)?;
    while cur.eat('|') {
        acc = BoolExpr::Or(Box::new(acc), Box::new(bool_xor(cur, res)?));
    }
    Ok(acc)
}

fn bool_xor(cur: &mut Cursor, res: &Resolver) -> Result<BoolExpr> {
    let mut acc = bool_and(cur, res)?;
    while cur.eat('^') {
        acc = BoolExpr::Xor(Box::new(acc), Box::new(bool_and(cur, res)?));
    }
    Ok(acc)
}

fn bool_and(cur: &mut Cursor, res: &Resolver) -> Result<BoolExpr> {
    let mut acc = bool_not(cur, res)?;
    while cur.eat('&') {
        acc = BoolExpr::And(Box::new(acc), Box::new(bool_not(cur, res)?));
    }
    Ok(acc)
}

fn bool_not(cur: &mut Cursor, res: &Resolver) -> Result<BoolExpr> {
    if cur.eat('!') {
        return Ok(BoolExpr::Not(Box::new(bool_not(cur, res)?)));
    }
    match cur.next() {
        Some(Tok::Num(0)) => Ok(BoolExpr::Const(false)),
        Some(Tok::Num(1)) => Ok(BoolExpr::Const(true)),
        Some(Tok::Ident(name)) => Ok(BoolExpr::Var(res.resolve(&name)?)),
        Some(Tok::Sym('(')) => {
            let inner = bool_or(cur, res)?;
            if !cur.eat(')') {
                return Err(syntax("missing ')'"));
            }
            Ok(inner)
        }
        other => Err(syntax(format!("unexpected {}", describe(&other)))),
    }
}
