//! Text grammar for polynomials:
//!
//! ```text
//! poly   := term (("+" | "-") term)*
//! term   := rational | rational "*" mono | mono
//! mono   := factor ("*" factor)*
//! factor := "x{" int ("," int)* "}" ("^" int)?
//! ```
//!
//! Whitespace is insignificant and indices are 1-based, e.g.
//! `3 - 2*x{1} + 1/2*x{1,2}`. Products of factors and powers are accepted so
//! raw (non-multilinear) input can be written down; [`parse_poly`]
//! multilinearizes it.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::Rational;
use crate::slice::poly::{multilinearize, MultilinearPoly, RawPoly};
use crate::subset::MAX_N;

struct Parser {
    chars: Vec<(char, usize)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        let chars = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (c, i + 1))
            .collect();
        Self {
            chars,
            pos: 0,
            end_column: text.chars().count() + 1,
        }
    }

    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end_column, |&(_, col)| col)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            column: self.column(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(c, _)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(c, _)| c).collect();
        Ok(s.parse().expect("validated digits"))
    }

    fn small_int(&mut self, what: &str) -> Result<usize> {
        let col = self.column();
        let value = self.digits()?;
        usize::try_from(value).map_err(|_| Error::Parse {
            column: col,
            message: format!("{what} out of range"),
        })
    }

    fn poly(&mut self) -> Result<RawPoly> {
        let mut raw = RawPoly::default();
        raw.terms.push(self.term(false)?);
        loop {
            let negate = match self.peek() {
                Some('+') => false,
                Some('-') => true,
                None => break,
                Some(_) => return Err(self.error("expected '+' or '-'")),
            };
            self.pos += 1;
            raw.terms.push(self.term(negate)?);
        }
        Ok(raw)
    }

    fn term(&mut self, negate: bool) -> Result<(Rational, Vec<(usize, u32)>)> {
        let mut sign = if negate { -1 } else { 1 };
        if self.eat('-') {
            sign = -sign;
        } else {
            self.eat('+');
        }
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let numer = self.digits()?;
            let denom = if self.eat('/') {
                let col = self.column();
                let d = self.digits()?;
                if d.is_zero() {
                    return Err(Error::Parse {
                        column: col,
                        message: "zero denominator".into(),
                    });
                }
                d
            } else {
                BigInt::one()
            };
            coeff = Rational::new(numer, denom);
            if !self.eat('*') {
                return Ok((coeff * BigInt::from(sign), factors));
            }
        }
        loop {
            factors.extend(self.factor()?);
            if !self.eat('*') {
                break;
            }
        }
        Ok((coeff * BigInt::from(sign), factors))
    }

    fn factor(&mut self) -> Result<Vec<(usize, u32)>> {
        self.expect('x')?;
        self.expect('{')?;
        let mut indices = Vec::new();
        loop {
            let col = self.column();
            let i = self.small_int("index")?;
            if i == 0 || i > MAX_N {
                return Err(Error::Parse {
                    column: col,
                    message: format!("index {i} outside 1..={MAX_N}"),
                });
            }
            indices.push(i);
            if !self.eat(',') {
                break;
            }
        }
        self.expect('}')?;
        let power = if self.eat('^') {
            let col = self.column();
            let p = self.small_int("power")?;
            if p == 0 {
                return Err(Error::Parse {
                    column: col,
                    message: "powers must be at least 1".into(),
                });
            }
            u32::try_from(p).unwrap_or(u32::MAX)
        } else {
            1
        };
        Ok(indices.into_iter().map(|i| (i, power)).collect())
    }
}

/// Parses the grammar into a raw polynomial without multilinearizing.
pub fn parse_raw(text: &str) -> Result<RawPoly> {
    let mut p = Parser::new(text);
    if p.peek().is_none() {
        return Err(p.error("empty polynomial"));
    }
    p.poly()
}

/// Parses and multilinearizes a polynomial over `x_1..x_n`.
pub fn parse_poly(text: &str, n: usize) -> Result<MultilinearPoly> {
    multilinearize(&parse_raw(text)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{rat, ratio};
    use crate::subset::Subset;

    #[test]
    fn parses_grammar_example() {
        let p = parse_poly("3 - 2*x{1} + 1/2*x{1,2}", 2).unwrap();
        assert_eq!(p.coeff(Subset::EMPTY), rat(3));
        assert_eq!(p.coeff(Subset::of(&[1])), rat(-2));
        assert_eq!(p.coeff(Subset::of(&[1, 2])), ratio(1, 2));
        assert_eq!(p.to_string(), "3 - 2*x{1} + 1/2*x{1,2}");
    }

    #[test]
    fn whitespace_signs_and_products() {
        let p = parse_poly(" - x{ 2 }*x{1}^3 +x{1,2} -   -4 ", 3).unwrap();
        // -x1x2 + x1x2 + 4
        assert_eq!(p, MultilinearPoly::constant(3, rat(4)));
        let q = parse_poly("x{3}^2", 3).unwrap();
        assert_eq!(q, MultilinearPoly::monomial(3, Subset::of(&[3]), rat(1)));
    }

    #[test]
    fn display_round_trip() {
        let text = "-7/3 + x{1} - x{2,5} + 12*x{1,3,4}";
        let p = parse_poly(text, 5).unwrap();
        assert_eq!(parse_poly(&p.to_string(), 5).unwrap(), p);
    }

    #[test]
    fn parse_errors_report_columns() {
        assert!(matches!(parse_raw(""), Err(Error::Parse { column: 1, .. })));
        assert!(matches!(parse_raw("3 +"), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse_raw("x{0}"), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_raw("2*y{1}"), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_raw("1/0"), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_raw("x{1} x{2}"), Err(Error::Parse { column: 6, .. })));
        assert!(matches!(parse_poly("x{4}", 3), Err(Error::DimensionMismatch { .. })));
    }
}
