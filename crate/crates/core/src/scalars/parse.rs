//! Expression parser shared by scalars, z-polynomials and algebra elements.
//!
//! Grammar: integers, single-letter variables, `+ - * / ^`, parentheses,
//! and implicit multiplication by juxtaposition (`y^2 z x`).

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::{Rational, Scalar};
use super::poly::ZPoly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(char),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
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
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Int(s.parse().map_err(|_| Error::Parse(s.clone()))?));
        } else if c.is_ascii_alphabetic() {
            out.push(Tok::Var(c));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat_op('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat_op('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Var(_)) | Some(Tok::Op('(')))
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_op('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_op('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if self.starts_atom() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_op('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat_op('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat_op('^') {
            let neg = self.eat_op('-');
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: i64 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
                }
                _ => Err(Error::Parse("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Var(c)) => {
                self.pos += 1;
                Ok(Expr::Var(c))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

/// Interpretation of an [`Expr`] in some ring.
pub trait Evaluator {
    type Value: Clone;

    fn int(&self, n: &BigInt) -> Result<Self::Value>;
    fn var(&self, c: char) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn one(&self) -> Self::Value;
    /// Multiplicative inverse where it exists.
    fn inverse(&self, a: &Self::Value) -> Result<Self::Value>;

    fn eval(&self, e: &Expr) -> Result<Self::Value> {
        Ok(match e {
            Expr::Int(n) => self.int(n)?,
            Expr::Var(c) => self.var(*c)?,
            Expr::Neg(a) => self.neg(self.eval(a)?),
            Expr::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?),
            Expr::Sub(a, b) => {
                let b = self.neg(self.eval(b)?);
                self.add(self.eval(a)?, b)
            }
            Expr::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?),
            Expr::Div(a, b) => {
                let inv = self.inverse(&self.eval(b)?)?;
                self.mul(self.eval(a)?, inv)
            }
            Expr::Pow(a, k) => {
                let mut base = self.eval(a)?;
                if *k < 0 {
                    base = self.inverse(&base)?;
                }
                let mut acc = self.one();
                for _ in 0..k.unsigned_abs() {
                    acc = self.mul(acc, base.clone());
                }
                acc
            }
        })
    }
}

/// Commutative evaluation in ℚ(q)[z].
pub struct ZPolyEval;

impl Evaluator for ZPolyEval {
    type Value = ZPoly<RatFunc>;

    fn int(&self, n: &BigInt) -> Result<Self::Value> {
        Ok(ZPoly::constant(RatFunc::from_rational(&Rational::from_integer(n.clone()))))
    }

    fn var(&self, c: char) -> Result<Self::Value> {
        match c {
            'q' => Ok(ZPoly::constant(RatFunc::q())),
            'z' => Ok(ZPoly::var()),
            _ => Err(Error::Parse(format!("unknown variable '{c}'"))),
        }
    }

    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value {
        &a + &b
    }

    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value {
        &a * &b
    }

    fn neg(&self, a: Self::Value) -> Self::Value {
        -a
    }

    fn one(&self) -> Self::Value {
        ZPoly::one()
    }

    fn inverse(&self, a: &Self::Value) -> Result<Self::Value> {
        match a.degree() {
            Some(0) => Ok(ZPoly::constant(a.lead().inv().ok_or(Error::DivisionByZero)?)),
            None => Err(Error::DivisionByZero),
            _ => Err(Error::Parse("division by a non-constant polynomial".into())),
        }
    }
}

pub fn parse_zpoly(src: &str) -> Result<ZPoly<RatFunc>> {
    ZPolyEval.eval(&parse_expr(src)?)
}

pub fn parse_ratfunc(src: &str) -> Result<RatFunc> {
    let p = parse_zpoly(src)?;
    match p.degree() {
        None => Ok(RatFunc::zero()),
        Some(0) => Ok(p.lead()),
        _ => Err(Error::Parse(format!("'{src}' depends on z"))),
    }
}

pub fn parse_rational(src: &str) -> Result<Rational> {
    parse_ratfunc(src)?
        .as_rational()
        .ok_or_else(|| Error::Parse(format!("'{src}' is not a rational number")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::poly::QPoly;
    use crate::scalars::ratfunc::rf_normalize;

    #[test]
    fn parses_ratfunc_with_division() {
        let r = parse_ratfunc("(q^2-1)/(q-1)").unwrap();
        assert_eq!(r, RatFunc::from_poly(QPoly::from_ints(&[1, 1])));
        let r = parse_ratfunc("1/q").unwrap();
        assert_eq!(r, rf_normalize(QPoly::from_ints(&[1]), QPoly::from_ints(&[0, 1])).unwrap());
        assert_eq!(parse_ratfunc("q^-1").unwrap(), r);
    }

    #[test]
    fn parses_zpoly_with_implicit_product() {
        let p = parse_zpoly("-z^2 - 2 z + 3").unwrap();
        assert_eq!(p, ZPoly::from_ints(&[3, -2, -1]));
        let p = parse_zpoly("z(1 - q^-2 z)").unwrap();
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfunc("q +").is_err());
        assert!(parse_ratfunc("z").is_err());
        assert!(parse_zpoly("1/z").is_err());
        assert!(parse_zpoly("w").is_err());
        assert!(parse_zpoly("1/0").is_err());
    }
}
