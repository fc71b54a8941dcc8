//! Recursive-descent parser for polynomial expressions such as
//! `y^2 + x^3`, `x + t*y` or `(w+1)*x^2 - 3`.
//!
//! Identifiers resolve to ring variables first, then to field generators
//! (extension generator or transcendentals), which act as coefficients.
//! Division is accepted only by nonzero constants.

use crate::error::{Error, Result};
use crate::poly::{Polynomial, PolyRing};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((Token::Plus, col));
                i += 1;
            }
            '-' => {
                out.push((Token::Minus, col));
                i += 1;
            }
            '*' => {
                out.push((Token::Star, col));
                i += 1;
            }
            '/' => {
                out.push((Token::Slash, col));
                i += 1;
            }
            '^' => {
                out.push((Token::Caret, col));
                i += 1;
            }
            '(' => {
                out.push((Token::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Token::RParen, col));
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s
                    .parse()
                    .map_err(|_| Error::parse(1, col, format!("integer `{s}` out of range")))?;
                out.push((Token::Num(n), col));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Token::Ident(chars[start..i].iter().collect()), col));
            }
            other => return Err(Error::parse(1, col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                let t = self.term()?;
                self.ring.neg(&t)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = self.ring.mul(&acc, &f)?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let f = self.power()?;
                    let c = match f.terms() {
                        [(m, c)] if m.is_one() => c.clone(),
                        _ => return Err(Error::parse(1, col, "division only by nonzero constants")),
                    };
                    let inv = self.ring.field().inv(&c).map_err(|_| Error::parse(1, col, "division by zero"))?;
                    acc = self.ring.scale(&acc, &inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let col = self.col();
            match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    if n > super::DEGREE_BUDGET {
                        return Err(Error::DegreeBudgetExceeded {
                            degree: n,
                            budget: super::DEGREE_BUDGET,
                        });
                    }
                    if base.len() == 1 {
                        // Monomial powers directly, without repeated multiplication.
                        let (m, c) = &base.terms()[0];
                        let mono = m.scale(n as u32);
                        if mono.degree() > super::DEGREE_BUDGET {
                            return Err(Error::DegreeBudgetExceeded {
                                degree: mono.degree(),
                                budget: super::DEGREE_BUDGET,
                            });
                        }
                        return Ok(self.ring.term(mono, self.ring.field().pow(c, n)));
                    }
                    self.ring.pow(&base, n)
                }
                _ => Err(Error::parse(1, col, "expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                let p = self.ring.field().characteristic() as u64;
                Ok(self.ring.constant(self.ring.field().from_i64((n % p) as i64)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.ring.var_index(&name) {
                    Ok(self.ring.var(i))
                } else if let Some(g) = self.ring.field().generator(&name) {
                    Ok(self.ring.constant(g))
                } else {
                    Err(Error::UnknownVariable(name))
                }
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(Error::parse(1, self.col(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(Error::parse(1, col, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(1, col, "unexpected end of expression")),
        }
    }
}

pub fn parse_polynomial(ring: &PolyRing, text: &str) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        ring,
        tokens,
        pos: 0,
        end_col: text.chars().count() + 1,
    };
    let f = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::parse(1, parser.col(), "trailing input"));
    }
    Ok(f)
}
