//! Expression grammar for Laurent polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (['*'] unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' int)?
//! atom   := integer | name | '(' expr ')'
//! ```
//!
//! Negative exponents are only accepted on units (`±t^ν`).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::LaurentPoly;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [String],
    end_col: usize,
}

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: 1,
        column,
        message: message.into(),
    }
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push((Tok::Int(lit.parse().unwrap()), col));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Name(chars[start..i].iter().collect()), col));
            }
            other => return Err(syntax(col, format!("unexpected character `{}`", other))),
        }
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                // juxtaposition, e.g. `2(t - 1)` or `(t - 1)(t + 1)`
                Some(Tok::LParen) | Some(Tok::Name(_)) | Some(Tok::Int(_)) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let col = self.col();
        let mut neg = false;
        let mut parens = false;
        if self.peek() == Some(&Tok::LParen) {
            self.bump();
            parens = true;
        }
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                neg = true;
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let v = match self.bump() {
            Some(Tok::Int(v)) => v,
            _ => return Err(syntax(col, "expected an integer exponent")),
        };
        if parens && self.bump() != Some(Tok::RParen) {
            return Err(syntax(col, "expected `)` after exponent"));
        }
        let v: i64 = i64::try_from(v).map_err(|_| syntax(col, "exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let col = self.col();
        let e = self.exponent()?;
        if e > u32::MAX as i64 || e < -(u32::MAX as i64) {
            return Err(syntax(col, "exponent out of range"));
        }
        if e >= 0 {
            Ok(base.pow(e as u32))
        } else {
            match base.unit_inverse() {
                Some(inv) => Ok(inv.pow((-e) as u32)),
                None => Err(syntax(col, "negative exponent on a non-unit")),
            }
        }
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(LaurentPoly::constant(self.nvars(), v)),
            Some(Tok::Name(n)) => match self.names.iter().position(|x| *x == n) {
                Some(i) => Ok(LaurentPoly::var(self.nvars(), i)),
                None => Err(Error::UndeclaredName(n)),
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(syntax(col, "unbalanced `(`")),
                }
            }
            Some(t) => Err(syntax(col, format!("unexpected token {:?}", t))),
            None => Err(syntax(col, "unexpected end of expression")),
        }
    }
}

/// Parse a Laurent polynomial in the variables `names`.
pub fn parse_poly(s: &str, names: &[String]) -> Result<LaurentPoly> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(syntax(1, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        end_col: s.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.col(), "trailing input"));
    }
    Ok(e)
}
