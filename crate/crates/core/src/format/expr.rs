//! Polynomial expressions:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' natural)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are ring generators or, where allowed, the parameter `t`. A
//! divisor must be a nonzero scalar.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing, PARAMETER};
use crate::scalar::{RatFunc, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'a Arc<PolyRing>,
    allow_t: bool,
    line: usize,
}

/// Where an expression sits in its file, for error positions.
#[derive(Clone, Copy, Debug)]
pub struct Span {
    pub line: usize,
    /// 1-based column of the first character.
    pub column: usize,
}

fn lex(text: &str, span: Span) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        let col = span.column + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[s..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("digits")), col));
        } else if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[s..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(Error::Parse {
                line: span.line,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((Tok::End, span.column + chars.len()));
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            column: self.toks[self.pos].1,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly<RatFunc>> {
        let neg = self.eat('-');
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly<RatFunc>> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if *self.peek() == Tok::Sym('/') {
                self.pos += 1;
                let at = self.pos;
                let d = self.factor()?;
                let inv = d.as_constant().and_then(|c| c.try_inv());
                match inv {
                    Some(inv) => acc = acc.scale(&inv),
                    None => {
                        self.pos = at;
                        return self.err("divisor must be a nonzero scalar");
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<RatFunc>> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().clone() {
                Tok::Int(n) => {
                    let e: u32 = match n.try_into() {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent too large"),
                    };
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a natural exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly<RatFunc>> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Poly::constant(self.ring, RatFunc::constant(Rational::from_integer(n))))
            }
            Tok::Ident(name) => {
                if name == PARAMETER {
                    if !self.allow_t {
                        return self.err("the parameter t is only allowed in [family] sections");
                    }
                    self.pos += 1;
                    return Ok(Poly::constant(self.ring, RatFunc::t()));
                }
                match self.ring.index_of(&name) {
                    Some(i) => {
                        self.pos += 1;
                        Ok(Poly::var(self.ring, i))
                    }
                    None => self.err(format!("undeclared identifier `{name}`")),
                }
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Tok::End => self.err("unexpected end of expression"),
            t => self.err(format!("unexpected {}", describe(&t))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of expression".into(),
    }
}

/// Parses an expression with coefficients in `ℚ(t)`.
pub fn parse_expr(text: &str, ring: &Arc<PolyRing>, allow_t: bool, span: Span) -> Result<Poly<RatFunc>> {
    let mut p = Parser {
        toks: lex(text, span)?,
        pos: 0,
        ring,
        allow_t,
        line: span.line,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err(format!("unexpected {}", describe(p.peek())));
    }
    Ok(e)
}

/// Parses an expression whose coefficients must be rational.
pub fn parse_rational_poly(text: &str, ring: &Arc<PolyRing>, span: Span) -> Result<Poly<Rational>> {
    parse_expr(text, ring, false, span)?.try_map_coeffs(|c| {
        c.as_rational().ok_or_else(|| Error::NotConstant(c.to_string()))
    })
}

/// Parses a scalar (no generators).
pub fn parse_scalar(text: &str, allow_t: bool, span: Span) -> Result<RatFunc> {
    let empty = PolyRing::new::<&str>(&[])?;
    let p = parse_expr(text, &empty, allow_t, span)?;
    Ok(p.as_constant().unwrap_or_else(RatFunc::zero))
}

use num_traits::Zero;
