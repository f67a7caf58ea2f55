//! Small infix expression language for polynomials with rational coefficients.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" uint)?
//! atom   := number | ident | "(" expr ")"
//! ```
//!
//! Division is only allowed by nonzero constants. Identifiers are resolved by
//! the caller, so the same parser serves Chern polynomials (`c1`, `c2`, ...)
//! and cohomology classes (`H`, `f1`, `xi`, ...).

use num_traits::{One, Zero};

use crate::ring::{CommutativeAlgebra, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at position {position}")]
pub struct ExprError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(Rational),
    Var { name: String, position: usize },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'s> {
    chars: Vec<char>,
    pos: usize,
    _src: &'s str,
}

impl<'s> Parser<'s> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> ExprError {
        ExprError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some('-') | Some('\u{2212}') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected an exponent"));
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = digits.parse().map_err(|_| ExprError {
                position: start,
                message: format!("exponent `{digits}` too large"),
            })?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: num_bigint::BigInt = digits.parse().expect("digits");
                Ok(Expr::Number(Rational::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                Ok(Expr::Var {
                    name: self.chars[start..self.pos].iter().collect(),
                    position: start,
                })
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses an expression; the whole input must be consumed.
pub fn parse_expr(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
        _src: src,
    };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(p.err(format!("unexpected `{c}`")));
    }
    Ok(e)
}

impl Expr {
    /// Evaluates in `A`; `resolve` maps an identifier to its value.
    pub fn evaluate<A, F>(&self, one: &A, resolve: &F) -> Result<A, ExprError>
    where
        A: CommutativeAlgebra,
        F: Fn(&str, usize) -> Result<A, ExprError>,
    {
        Ok(match self {
            Expr::Number(q) => one.scaled(q),
            Expr::Var { name, position } => resolve(name, *position)?,
            Expr::Add(a, b) => a.evaluate(one, resolve)?.plus(&b.evaluate(one, resolve)?),
            Expr::Sub(a, b) => a
                .evaluate(one, resolve)?
                .plus(&b.evaluate(one, resolve)?.scaled(&-Rational::one())),
            Expr::Mul(a, b) => a.evaluate(one, resolve)?.times(&b.evaluate(one, resolve)?),
            Expr::Div(a, b, at) => {
                let d = b.constant_value().ok_or_else(|| ExprError {
                    position: *at,
                    message: "division only by constants".into(),
                })?;
                if d.is_zero() {
                    return Err(ExprError {
                        position: *at,
                        message: "division by zero".into(),
                    });
                }
                a.evaluate(one, resolve)?.scaled(&d.recip())
            }
            Expr::Neg(a) => a.evaluate(one, resolve)?.scaled(&-Rational::one()),
            Expr::Pow(a, e) => {
                let base = a.evaluate(one, resolve)?;
                let mut acc = one.clone();
                for _ in 0..*e {
                    acc = acc.times(&base);
                }
                acc
            }
        })
    }

    /// Value of a variable-free expression.
    pub fn constant_value(&self) -> Option<Rational> {
        let resolve = |_: &str, p: usize| -> Result<Rational, ExprError> {
            Err(ExprError {
                position: p,
                message: String::new(),
            })
        };
        self.evaluate(&Rational::one(), &resolve).ok()
    }
}

/// Parses a polynomial in `c1, ..., cr`. With `rank = None` the rank is the
/// largest index that occurs (at least 1).
pub fn parse_chern_poly(
    src: &str,
    rank: Option<usize>,
) -> Result<crate::ring::ChernPoly, ExprError> {
    use crate::ring::ChernPoly;
    let e = parse_expr(src)?;
    let mut max_index = 1;
    collect_chern_indices(&e, &mut max_index)?;
    let rank = match rank {
        Some(r) => r,
        None => max_index,
    };
    let one = ChernPoly::one(rank);
    let resolve = |name: &str, position: usize| -> Result<ChernPoly, ExprError> {
        let i = chern_index(name).ok_or_else(|| ExprError {
            position,
            message: format!("unknown variable `{name}` (expected c1..c{rank})"),
        })?;
        if i > rank {
            return Err(ExprError {
                position,
                message: format!("variable `{name}` exceeds rank {rank}"),
            });
        }
        Ok(ChernPoly::chern(rank, i as i64))
    };
    e.evaluate(&one, &resolve)
}

fn chern_index(name: &str) -> Option<usize> {
    let i: usize = name.strip_prefix('c')?.parse().ok()?;
    (i >= 1).then_some(i)
}

fn collect_chern_indices(e: &Expr, max: &mut usize) -> Result<(), ExprError> {
    match e {
        Expr::Number(_) => Ok(()),
        Expr::Var { name, position } => {
            let i = chern_index(name).ok_or_else(|| ExprError {
                position: *position,
                message: format!("unknown variable `{name}` (expected c1, c2, ...)"),
            })?;
            *max = (*max).max(i);
            Ok(())
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            collect_chern_indices(a, max)?;
            collect_chern_indices(b, max)
        }
        Expr::Neg(a) | Expr::Pow(a, _) => collect_chern_indices(a, max),
    }
}
