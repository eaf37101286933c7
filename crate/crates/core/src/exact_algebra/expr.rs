//! Infix expressions `2*x^2*y - 3/4*(x + 1)` over any ring-like target.
//!
//! Products are kept in the written order, so the same parser serves
//! commutative polynomials and noncommutative words. Division is only
//! allowed by a nonzero scalar literal.

use crate::error::{Error, Result};
use crate::exact_algebra::poly::{BaseRing, Poly};
use crate::exact_algebra::scalar::{Field, Scalar};

/// What an expression is evaluated into.
pub trait ExprTarget {
    type Value: Clone;
    fn field(&self) -> Field;
    fn scalar(&self, c: Scalar) -> Self::Value;
    fn ident(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
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
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(Error::input(format!(
                "unexpected character '{c}' in expression '{text}'"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a, T: ExprTarget> {
    target: &'a T,
    tokens: Vec<Token>,
    pos: usize,
    text: &'a str,
}

impl<T: ExprTarget> Parser<'_, T> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn fail(&self, what: &str) -> Error {
        Error::input(format!(
            "{what} at token {} of '{}'",
            self.pos + 1,
            self.text
        ))
    }

    fn number(&mut self) -> Result<u64> {
        match self.tokens.get(self.pos) {
            Some(Token::Num(n)) => {
                let v = n.parse().map_err(|_| self.fail("number too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.fail("expected a number")),
        }
    }

    fn expr(&mut self) -> Result<T::Value> {
        let field = self.target.field();
        let mut acc: Option<T::Value> = None;
        loop {
            let negative = if self.eat('-') {
                true
            } else {
                let _ = acc.is_none() && self.eat('+');
                false
            };
            let mut t = self.term()?;
            if negative {
                t = self.target.mul(&self.target.scalar(field.from_i64(-1)), &t);
            }
            acc = Some(match acc {
                None => t,
                Some(a) => self.target.add(&a, &t),
            });
            match self.peek() {
                Some(Token::Sym('+')) => {
                    self.pos += 1;
                }
                Some(Token::Sym('-')) => {}
                _ => return Ok(acc.expect("at least one term")),
            }
        }
    }

    fn term(&mut self) -> Result<T::Value> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let f = self.power()?;
                acc = self.target.mul(&acc, &f);
            } else if self.eat('/') {
                let d = self.number()?;
                let field = self.target.field();
                let inv = field
                    .from_i64(d as i64)
                    .inv()
                    .ok_or_else(|| self.fail("division by zero"))?;
                acc = self.target.mul(&acc, &self.target.scalar(inv));
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<T::Value> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.number()?;
        let mut acc = self.target.scalar(self.target.field().one());
        for _ in 0..e {
            acc = self.target.mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<T::Value> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(_)) => {
                let n = self.number()?;
                Ok(self.target.scalar(self.target.field().from_i64(n as i64)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.target.ident(&name)
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.fail("expected ')'"));
                }
                Ok(v)
            }
            _ => Err(self.fail("expected a number, a name or '('")),
        }
    }
}

pub fn parse_expression<T: ExprTarget>(target: &T, text: &str) -> Result<T::Value> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::input("empty expression"));
    }
    let mut p = Parser {
        target,
        tokens,
        pos: 0,
        text,
    };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.fail("trailing input"));
    }
    Ok(v)
}

impl ExprTarget for BaseRing {
    type Value = Poly;

    fn field(&self) -> Field {
        BaseRing::field(self)
    }

    fn scalar(&self, c: Scalar) -> Poly {
        self.constant(c)
    }

    fn ident(&self, name: &str) -> Result<Poly> {
        self.var_index(name)
            .map(|j| self.var(j))
            .ok_or_else(|| Error::input(format!("unknown variable '{name}'")))
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }
}

impl BaseRing {
    /// Parses a polynomial in the ring variables.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        parse_expression(self, text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_display() {
        let ring = BaseRing::with_vars(Field::Rational, &["x", "y"]);
        for s in ["0", "1", "x", "-x", "x^2*y - 3/4*x + 1", "2*x*y^3"] {
            let p = ring.parse(s).unwrap();
            assert_eq!(ring.parse(&p.display_with(ring.vars())).unwrap(), p, "{s}");
        }
        assert_eq!(
            ring.parse("(x + 1)^2").unwrap(),
            ring.parse("x^2 + 2*x + 1").unwrap()
        );
        assert_eq!(
            ring.parse("-(x - y)").unwrap(),
            ring.parse("y - x").unwrap()
        );
        assert_eq!(ring.parse("x/2 + x/2").unwrap(), ring.var(0));
    }

    #[test]
    fn rejects_garbage() {
        let ring = BaseRing::with_vars(Field::Rational, &["x"]);
        for s in ["", "z", "x +", "x/0", "(x", "x $ 1", "x/x"] {
            assert!(ring.parse(s).is_err(), "{s}");
        }
    }

    #[test]
    fn reduces_mod_p() {
        let ring = BaseRing::with_vars(Field::prime(5).unwrap(), &["x"]);
        assert_eq!(ring.parse("7*x").unwrap(), ring.parse("2*x").unwrap());
        assert_eq!(ring.parse("x/2").unwrap(), ring.parse("3*x").unwrap());
    }
}
