//! Integer polynomial expressions for family data files.
//!
//! Grammar (explicit `*` required, `^` takes a literal non-negative
//! exponent):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := uint | ident | '(' expr ')' | '-' atom
//! ```
//!
//! All arithmetic is checked; overflow is reported rather than wrapped.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn eval(&self, env: &BTreeMap<String, i64>) -> Result<i64> {
        let overflow = || Error::Formula("integer overflow during evaluation".to_string());
        match self {
            Expr::Int(n) => Ok(*n),
            Expr::Var(name) => env
                .get(name)
                .copied()
                .ok_or_else(|| Error::Formula(format!("unbound variable {name:?}"))),
            Expr::Neg(e) => e.eval(env)?.checked_neg().ok_or_else(overflow),
            Expr::Add(a, b) => a.eval(env)?.checked_add(b.eval(env)?).ok_or_else(overflow),
            Expr::Sub(a, b) => a.eval(env)?.checked_sub(b.eval(env)?).ok_or_else(overflow),
            Expr::Mul(a, b) => a.eval(env)?.checked_mul(b.eval(env)?).ok_or_else(overflow),
            Expr::Pow(a, n) => a.eval(env)?.checked_pow(*n).ok_or_else(overflow),
        }
    }

    /// Variables appearing in the expression.
    pub fn vars(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Int(_) => {}
                Expr::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                Expr::Neg(a) | Expr::Pow(a, _) => walk(a, out),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Formula(format!("{msg} at byte {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(b'-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp = self.uint()?;
            let exp = u32::try_from(exp).map_err(|_| self.err("exponent out of range"))?;
            Ok(Expr::Pow(Box::new(base), exp))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.uint()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                {
                    self.pos += 1;
                }
                Ok(Expr::Var(self.src[start..self.pos].to_string()))
            }
            Some(_) => Err(self.err("expected a number, variable, '(' or '-'")),
            None => Err(self.err("unexpected end of expression")),
        }
    }

    fn uint(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        self.src[start..self.pos]
            .parse::<i64>()
            .map_err(|_| self.err("number out of range"))
    }
}

/// Parses an expression.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses and evaluates in one step.
pub fn eval(src: &str, env: &BTreeMap<String, i64>) -> Result<i64> {
    parse(src)?.eval(env)
}
