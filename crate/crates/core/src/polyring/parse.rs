use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::{Monomial, Var};
use super::polynomial::Polynomial;
use super::{PolyError, Rational};

/// Parses the polynomial literal grammar: terms joined by `+`/`-`, each term
/// `[coef][*]var[^exp][*var[^exp]...]` with `coef` an integer or `int/int`.
pub fn parse_polynomial(input: &str) -> Result<Polynomial, PolyError> {
    Parser::new(input).polynomial()
}

/// Parses `int` or `int/int`, optionally signed.
pub fn parse_rational(input: &str) -> Result<Rational, PolyError> {
    let mut p = Parser::new(input);
    p.skip_ws();
    let neg = p.eat('-');
    if !neg {
        p.eat('+');
    }
    p.skip_ws();
    let r = p
        .coefficient()?
        .ok_or_else(|| p.error("expected a rational number"))?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(if neg { -r } else { r })
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input,
            chars: input.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, message: &str) -> PolyError {
        PolyError::Parse {
            input: self.input.to_string(),
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn coefficient(&mut self) -> Result<Option<Rational>, PolyError> {
        let Some(n) = self.integer() else {
            return Ok(None);
        };
        if self.eat('/') {
            let d = self
                .integer()
                .ok_or_else(|| self.error("expected a denominator"))?;
            if d.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Some(Rational::new(n, d)))
        } else {
            Ok(Some(Rational::from_integer(n)))
        }
    }

    fn identifier(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_alphabetic() || c == '_') {
            return None;
        }
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn factor(&mut self) -> Result<(Var, u32), PolyError> {
        let name = self
            .identifier()
            .ok_or_else(|| self.error("expected a variable name"))?;
        let exp = if self.eat('^') {
            let e = self
                .integer()
                .ok_or_else(|| self.error("expected an exponent"))?;
            u32::try_from(e).map_err(|_| self.error("exponent too large"))?
        } else {
            1
        };
        Ok((Var::new(&name), exp))
    }

    fn term(&mut self) -> Result<(Rational, Monomial), PolyError> {
        let coef = self.coefficient()?;
        let mut factors = Vec::new();
        match coef {
            Some(_) => {
                if self.eat('*') {
                    factors.push(self.factor()?);
                } else {
                    self.skip_ws();
                    if self.peek().is_some_and(|c| c.is_alphabetic() || c == '_') {
                        factors.push(self.factor()?);
                    }
                }
            }
            None => factors.push(self.factor()?),
        }
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok((
            coef.unwrap_or_else(Rational::one),
            Monomial::from_pairs(factors),
        ))
    }

    fn polynomial(&mut self) -> Result<Polynomial, PolyError> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos >= self.chars.len() {
                if first {
                    return Err(self.error("empty polynomial"));
                }
                return Err(self.error("expected a term"));
            }
            let sign = if self.eat('-') {
                -1
            } else if self.eat('+') || first {
                1
            } else {
                return Err(self.error("expected `+` or `-`"));
            };
            let (c, m) = self.term()?;
            terms.push((m, if sign < 0 { -c } else { c }));
            first = false;
            self.skip_ws();
            if self.pos >= self.chars.len() {
                break;
            }
            if !matches!(self.peek(), Some('+') | Some('-')) {
                return Err(self.error("unexpected character"));
            }
        }
        Ok(Polynomial::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::ratio;

    #[test]
    fn parses_grammar() {
        let h = parse_polynomial("1/8*x1^2 + 1/8*x2^2").unwrap();
        let x1 = Polynomial::var("x1");
        let x2 = Polynomial::var("x2");
        let expected = (&(&x1 * &x1) + &(&x2 * &x2)).scale(&ratio(1, 8));
        assert_eq!(h, expected);
        assert_eq!(parse_polynomial("-3").unwrap(), Polynomial::from_int(-3));
        assert_eq!(
            parse_polynomial("2 x*y - x*y").unwrap(),
            &Polynomial::var("x") * &Polynomial::var("y")
        );
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn reports_offsets() {
        match parse_polynomial("x + * y") {
            Err(PolyError::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("1/0").is_err());
        assert!(parse_polynomial("x +").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1/8*x1^2 + 1/8*x2^2 - 3", "-x*y^2 + 5/3", "x"] {
            let p = parse_polynomial(s).unwrap();
            assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
        }
    }
}
