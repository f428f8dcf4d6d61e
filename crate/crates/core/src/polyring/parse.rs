//! Reader for the textual polynomial format, e.g. `3*a11^2*a12 - 1/2*a21`.
//!
//! Grammar: `expr := ['+'|'-'] term (('+'|'-') term)*`,
//! `term := factor ('*' factor)*`, `factor := atom ['^' integer]`,
//! `atom := integer ['/' integer] | variable | '(' expr ')'`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::field::Field;
use super::poly::{PolyRing, Polynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
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
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Int(digits.parse().expect("digits parse")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    ring: &'a Arc<PolyRing<F>>,
    tokens: Vec<Token>,
    pos: usize,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let negate = if self.eat_op('-') {
            true
        } else {
            self.eat_op('+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            if self.eat_op('+') {
                acc = &acc + &self.term()?;
            } else if self.eat_op('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        while self.eat_op('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Int(k)) => {
                    self.pos += 1;
                    let k: u32 = k.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(k))
                }
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                let den = if self.eat_op('/') {
                    match self.tokens.get(self.pos).cloned() {
                        Some(Token::Int(d)) => {
                            self.pos += 1;
                            d
                        }
                        other => return Err(Error::Parse(format!("expected denominator, found {other:?}"))),
                    }
                } else {
                    BigInt::one()
                };
                Ok(self.ring.constant(self.ring.field().from_fraction(&n, &den)?))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let i = self.ring.var_index(&name).ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                Ok(self.ring.var(i))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_polynomial<F: Field>(ring: &Arc<PolyRing<F>>, s: &str) -> Result<Polynomial<F>> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut parser = Parser { ring, tokens, pos: 0 };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{MonomialOrder, PrimeField, Rationals};

    fn ring() -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, vec!["a11".into(), "a12".into(), "a21".into()], MonomialOrder::GrevLex)
    }

    #[test]
    fn parses_the_documented_example() {
        let r = ring();
        let f = parse_polynomial(&r, "3*a11^2*a12 - 1/2*a21").unwrap();
        assert_eq!(f.to_string(), "3*a11^2*a12 - 1/2*a21");
        assert_eq!(parse_polynomial(&r, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn parentheses_and_signs() {
        let r = ring();
        let f = parse_polynomial(&r, "-(a11 + a12)^2 + 2*a11*a12").unwrap();
        assert_eq!(f.to_string(), "-a11^2 - a12^2");
        assert_eq!(parse_polynomial(&r, "0").unwrap(), r.zero());
    }

    #[test]
    fn errors() {
        let r = ring();
        assert!(parse_polynomial(&r, "").is_err());
        assert!(parse_polynomial(&r, "b").is_err());
        assert!(parse_polynomial(&r, "a11 +").is_err());
        assert!(parse_polynomial(&r, "1/0").is_err());
        assert!(parse_polynomial(&r, "a11 a12").is_err());
        assert!(parse_polynomial(&r, "a11 $").is_err());
    }

    #[test]
    fn prime_field_literals() {
        let r = PolyRing::new(PrimeField::new(7).unwrap(), vec!["x".into()], MonomialOrder::GrevLex);
        assert_eq!(parse_polynomial(&r, "1/2*x - 1").unwrap().to_string(), "4*x + 6");
    }
}
