//! Text form of polynomials: terms joined by `+`/`-`, each term a `*`-separated
//! product of an optional integer-or-rational coefficient and variable powers
//! `v^k`. Whitespace is insignificant. Printing and parsing are mutually
//! inverse on canonical forms.

use crate::error::{Error, Result};
use crate::poly::{Polynomial, PolyRing};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Number(s));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(s));
            }
            other => return Err(Error::MalformedToken(other.to_string())),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    ring: &'a PolyRing,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                negate = true;
                self.next();
            }
            Some(Token::Plus) => {
                self.next();
            }
            _ => {}
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    let t = self.parse_term()?;
                    acc = acc.add(&t)?;
                }
                Some(Token::Minus) => {
                    self.next();
                    let t = self.parse_term()?;
                    acc = acc.sub(&t)?;
                }
                None => break,
                Some(tok) => return Err(Error::MalformedToken(format!("{tok:?}"))),
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Polynomial> {
        let mut acc = self.parse_atom()?;
        while let Some(Token::Star) = self.peek() {
            self.next();
            let a = self.parse_atom()?;
            acc = acc.mul(&a)?;
        }
        Ok(acc)
    }

    fn parse_atom(&mut self) -> Result<Polynomial> {
        match self.next() {
            Some(Token::Number(n)) => {
                let denom = if let Some(Token::Slash) = self.peek() {
                    self.next();
                    match self.next() {
                        Some(Token::Number(d)) => Some(d),
                        other => {
                            return Err(Error::MalformedToken(format!(
                                "expected denominator, got {other:?}"
                            )))
                        }
                    }
                } else {
                    None
                };
                let repr = match &denom {
                    Some(d) => format!("{n}/{d}"),
                    None => n.clone(),
                };
                let c = Scalar::from_decimal(self.ring.field(), &n, denom.as_deref())
                    .ok_or(Error::BadCoefficient(repr))?;
                Ok(self.ring.constant(c))
            }
            Some(Token::Ident(name)) => {
                let v = self.ring.var(&name)?;
                if let Some(Token::Caret) = self.peek() {
                    self.next();
                    match self.next() {
                        Some(Token::Number(e)) => {
                            let e: u32 = e
                                .parse()
                                .map_err(|_| Error::MalformedToken(format!("^{e}")))?;
                            Ok(v.pow(e))
                        }
                        other => Err(Error::MalformedToken(format!(
                            "expected exponent, got {other:?}"
                        ))),
                    }
                } else {
                    Ok(v)
                }
            }
            other => Err(Error::MalformedToken(format!("{other:?}"))),
        }
    }
}

/// Parse `text` as a polynomial over `ring`.
pub fn poly_parse(text: &str, ring: &PolyRing) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::MalformedToken("<empty>".to_string()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        ring,
    };
    p.parse_expr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::scalar::CoeffField;

    fn ring() -> PolyRing {
        PolyRing::new(&["x", "y", "z"], CoeffField::Rational)
    }

    #[test]
    fn basic_terms() {
        let r = ring();
        let p = poly_parse("x^2*y + 3*z", &r).unwrap();
        let terms: Vec<_> = p.terms().collect();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].0, &Monomial(vec![0, 0, 1]));
        assert_eq!(terms[1].0, &Monomial(vec![2, 1, 0]));
    }

    #[test]
    fn zero_literal() {
        let r = ring();
        assert!(poly_parse("0", &r).unwrap().is_zero());
    }

    #[test]
    fn hypersurface_monomial() {
        let r = PolyRing::new(&["p", "q", "r"], CoeffField::Rational);
        let p = poly_parse("p^2*q*r", &r).unwrap();
        assert_eq!(p.num_terms(), 1);
        let (m, c) = p.terms().next().unwrap();
        assert_eq!(m, &Monomial(vec![2, 1, 1]));
        assert!(c.is_one());
    }

    #[test]
    fn rational_coefficients_and_signs() {
        let r = ring();
        let p = poly_parse("1/2*x - 3*y + y", &r).unwrap();
        assert_eq!(p.to_string(), "1/2*x - 2*y");
    }

    #[test]
    fn errors() {
        let r = ring();
        assert!(matches!(
            poly_parse("w + 1", &r),
            Err(Error::UnknownVariable(_))
        ));
        assert!(poly_parse("x +", &r).is_err());
        assert!(poly_parse("x ^ y", &r).is_err());
        assert!(poly_parse("1/0", &r).is_err());
        assert!(poly_parse("", &r).is_err());
    }

    #[test]
    fn print_parse_fixed_point() {
        let r = ring();
        for text in ["x^2*y + 3*z", "-x + y - 1", "2/3*x*y*z - z^5", "0", "7"] {
            let p1 = poly_parse(text, &r).unwrap();
            let p2 = poly_parse(&p1.to_string(), &r).unwrap();
            assert_eq!(p1, p2);
            assert_eq!(p1.to_string(), p2.to_string());
        }
    }
}
