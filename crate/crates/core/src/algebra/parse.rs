//! Recursive-descent reader for polynomials and rational functions in `t`.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := '-' factor | atom ('^' uint)?
//! atom     := rational | 't' | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! The rational-function reader additionally accepts `/` between factors.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

pub fn parse_poly(text: &str) -> Result<Polynomial> {
    let v = Parser::new(text, false).run()?;
    Ok(v.numer().clone())
}

pub fn parse_ratfun(text: &str) -> Result<RationalFunction> {
    Parser::new(text, true).run()
}

/// Reads `x = <ratfun>; y = <ratfun>`.
pub fn parse_section(text: &str) -> Result<(RationalFunction, RationalFunction)> {
    let mut parts = text.split(';');
    let (Some(xs), Some(ys), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(syntax(0, "expected 'x = ...; y = ...'"));
    };
    let offset = xs.len() + 1;
    let x = parse_assignment(xs, 'x', 0)?;
    let y = parse_assignment(ys, 'y', offset)?;
    Ok((x, y))
}

fn parse_assignment(text: &str, var: char, offset: usize) -> Result<RationalFunction> {
    let Some((lhs, rhs)) = text.split_once('=') else {
        return Err(syntax(offset, format!("expected '{} ='", var)));
    };
    if lhs.trim() != var.to_string() {
        return Err(syntax(offset, format!("expected '{} ='", var)));
    }
    let start = offset + lhs.chars().count() + 1;
    parse_ratfun(rhs).map_err(|e| match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + start, msg },
        Error::UnknownVariable(c, pos) => Error::UnknownVariable(c, pos + start),
        other => other,
    })
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    allow_div: bool,
}

impl Parser {
    fn new(text: &str, allow_div: bool) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, allow_div }
    }

    fn run(mut self) -> Result<RationalFunction> {
        let v = self.expr()?;
        self.skip_ws();
        if self.pos < self.chars.len() {
            return Err(self.unexpected());
        }
        Ok(v)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn unexpected(&mut self) -> Error {
        match self.peek() {
            Some(c) if c.is_alphabetic() => Error::UnknownVariable(c, self.pos),
            Some(c) => syntax(self.pos, format!("unexpected '{}'", c)),
            None => syntax(self.pos, "unexpected end of input"),
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some('/') if self.allow_div => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(syntax(at, "division by zero"));
                    }
                    acc = (&acc / &rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.uint()?;
            let e: i32 = e
                .try_into()
                .map_err(|_| syntax(at, "exponent too large"))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                Ok(RationalFunction::t())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(syntax(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            _ => Err(self.unexpected()),
        }
    }

    fn rational(&mut self) -> Result<RationalFunction> {
        let n = self.digits()?;
        // In polynomial mode a slash is only legal as part of a literal.
        if !self.allow_div && self.peek() == Some('/') {
            self.pos += 1;
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(syntax(at, "zero denominator"));
            }
            return Ok(RationalFunction::constant(Rational::new(n, d)));
        }
        Ok(RationalFunction::constant(Rational::from_integer(n)))
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn uint(&mut self) -> Result<u64> {
        let at = self.pos;
        let v = self.digits()?;
        v.try_into().map_err(|_| syntax(at, "exponent too large"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac;

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_poly("t^4 - 1").unwrap(), Polynomial::from_ints(&[-1, 0, 0, 0, 1]));
        assert_eq!(
            parse_poly("3/2*t^2 + t").unwrap(),
            Polynomial::from_coeffs(vec![frac(0, 1), frac(1, 1), frac(3, 2)])
        );
        assert_eq!(parse_poly("t*(t-1)^2").unwrap(), Polynomial::from_ints(&[0, 1, -2, 1]));
    }

    #[test]
    fn leading_minus() {
        assert_eq!(parse_poly("-t^2 + 1").unwrap(), Polynomial::from_ints(&[1, 0, -1]));
        assert_eq!(parse_poly("-3/4").unwrap(), Polynomial::constant(frac(-3, 4)));
    }

    #[test]
    fn unknown_variable_has_position() {
        assert_eq!(parse_poly("t + x").unwrap_err(), Error::UnknownVariable('x', 4));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_poly("t +"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("(t"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("t/t"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("1/0"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn rational_function_round_trip() {
        let r = parse_ratfun("(t + 1)/t^2 - 3/2").unwrap();
        assert_eq!(parse_ratfun(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn section_text() {
        let (x, y) = parse_section("x = t^2; y = (t^3 + 1)/t").unwrap();
        assert_eq!(x.to_string(), "t^2");
        assert_eq!(y.to_string(), "(t^3 + 1)/t");
    }
}
