//! Exact evaluation of small rational expressions in one variable `q`.
//!
//! Grammar: sums and differences of products and quotients of factors,
//! where a factor is an integer, `q`, or a parenthesised expression, with an
//! optional non-negative integer exponent `^n`. Juxtaposition multiplies, so
//! `2q(q+1)/3` is accepted.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i128),
    Q,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(lit.parse().map_err(|_| Error::Parse(format!("number {lit}")))?));
            }
            'q' => out.push(Tok::Q),
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            _ => return Err(Error::Parse(format!("unexpected {c:?} in {s:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    q: Rational,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<Rational> {
        let mut v = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    v += self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    v -= self.term()?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn term(&mut self) -> Result<Rational> {
        let mut v = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    v *= self.power()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.power()?;
                    if d == Rational::from_integer(0) {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    v /= d;
                }
                Some(Tok::Num(_)) | Some(Tok::Q) | Some(Tok::LParen) => v *= self.power()?,
                _ => return Ok(v),
            }
        }
    }

    fn power(&mut self) -> Result<Rational> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(Error::Parse("exponent must be an integer".into()));
            };
            self.pos += 1;
            return Ok(base.pow(n as i32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Rational> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Rational::from_integer(n))
            }
            Some(Tok::Q) => {
                self.pos += 1;
                Ok(self.q)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

/// Evaluates `expr` at the given `q`.
pub fn eval(expr: &str, q: u64) -> Result<Rational> {
    let toks = lex(expr)?;
    let mut p = Parser { toks: &toks, pos: 0, q: Rational::from_integer(q as i128) };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse(format!("trailing input in {expr:?}")));
    }
    Ok(v)
}

/// Evaluates `expr` and requires a non-negative integer result.
pub fn eval_count(expr: &str, q: u64) -> Result<u64> {
    let v = eval(expr, q)?;
    if !v.is_integer() || v < Rational::from_integer(0) {
        return Err(Error::Inconsistent(format!("{expr} at q = {q} gives {v}")));
    }
    Ok(v.to_integer() as u64)
}
