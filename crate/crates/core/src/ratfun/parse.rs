//! Recursive-descent parser for the text form of rational functions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' index | 'h' | '(' expr ')'
//! ```
//!
//! Division needs the divisor's numerator to split into linear factors.
//! Candidate factors are the variables and every degree-1 subexpression
//! seen before the division is resolved.

use num_bigint::BigInt;
use thiserror::Error;

use super::{LinearForm, Polynomial, RatFun, RatFunError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    X(usize),
    H,
    Op(char),
    LParen,
    RParen,
}

fn err(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError { pos, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].parse().unwrap())));
            }
            'x' => {
                let start = i;
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(err(start, "expected variable index after `x`"));
                }
                let idx: usize = text[ds..i].parse().map_err(|_| err(start, "variable index too large"))?;
                if idx == 0 {
                    return Err(err(start, "variables are numbered from x1"));
                }
                out.push((start, Tok::X(idx)));
            }
            'h' => {
                out.push((i, Tok::H));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' => {
                out.push((i, Tok::Op(c)));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            _ => return Err(err(i, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

/// Largest `x` index in the text (0 when there is none).
pub(super) fn max_var_index(text: &str) -> Result<usize, ParseError> {
    Ok(tokenize(text)?
        .iter()
        .filter_map(|(_, t)| if let Tok::X(i) = t { Some(*i) } else { None })
        .max()
        .unwrap_or(0))
}

#[derive(Debug)]
enum Ast {
    Num(BigInt),
    Var(usize),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, usize),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    nx: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' { Ast::Add(lhs.into(), rhs.into()) } else { Ast::Sub(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            let at = self.here();
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if c == '*' { Ast::Mul(lhs.into(), rhs.into()) } else { Ast::Div(lhs.into(), rhs.into(), at) };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Ast::Neg(self.unary()?.into()))
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let at = self.here();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| err(at, "exponent too large"))?;
                    return Ok(Ast::Pow(base.into(), e));
                }
                _ => return Err(err(at, "expected non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Ast::Num(n))
            }
            Some(Tok::X(i)) => {
                if i > self.nx {
                    return Err(err(at, format!("variable x{i} out of range (have {} x-variables)", self.nx)));
                }
                self.pos += 1;
                Ok(Ast::Var(i - 1))
            }
            Some(Tok::H) => {
                self.pos += 1;
                Ok(Ast::Var(self.nx))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(err(self.here(), "expected `)`")),
                }
            }
            Some(t) => Err(err(at, format!("unexpected token {t:?}"))),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

struct Evaluator {
    nx: usize,
    candidates: Vec<LinearForm>,
}

impl Evaluator {
    /// Post-order evaluation; every degree-1 subexpression is recorded as a
    /// candidate factor before any division that encloses it is resolved.
    fn eval(&mut self, ast: &Ast) -> Result<RatFun, ParseError> {
        let v = match ast {
            Ast::Num(n) => RatFun::constant(self.nx, Scalar::from_integer(n.clone())),
            Ast::Var(i) => RatFun::from_polynomial(Polynomial::var(self.nx, *i)),
            Ast::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Ast::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Ast::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?),
            Ast::Neg(a) => self.eval(a)?.neg(),
            Ast::Pow(a, e) => {
                let base = self.eval(a)?;
                (0..*e).fold(RatFun::one(self.nx), |acc, _| acc.mul(&base))
            }
            Ast::Div(a, b, at) => {
                let num = self.eval(a)?;
                let den = self.eval(b)?;
                let r = den.recip_over(&self.candidates).map_err(|e| match e {
                    RatFunError::DivisionByZero => err(*at, "division by zero"),
                    _ => err(*at, "divisor does not split into degree-1 forms appearing in the input"),
                })?;
                num.mul(&r)
            }
        };
        if v.denominator().next().is_none() {
            if let Some(l) = v.numerator().as_linear() {
                if !self.candidates.contains(&l) {
                    self.candidates.push(l);
                }
            }
        }
        Ok(v)
    }
}

pub(super) fn parse(text: &str, nx: usize) -> Result<RatFun, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), nx };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.here(), "trailing input"));
    }
    let candidates = (0..=nx).filter_map(|i| Polynomial::var(nx, i).as_linear()).collect();
    Evaluator { nx, candidates }.eval(&ast)
}
