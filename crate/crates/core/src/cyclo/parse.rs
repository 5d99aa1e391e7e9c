//! Recursive-descent parser for cyclotomic expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' int)?
//! base   := rational | 'E(' posint ')' | '(' expr ')'
//! ```
//!
//! Rationals are `p` or `p/q` with an optional sign and no interior spaces.
//! Two extensions are accepted on top of the grammar: a leading `-` before a
//! non-numeric factor, and variables `x1, x2, …` for the polynomial format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{CycloError, CyclotomicNumber};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rational(BigRational),
    Root(u32),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division; carries the source offset of the operator for diagnostics.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    allow_vars: bool,
}

/// Parses `src` into an expression tree.
pub fn parse_expr(src: &str, allow_vars: bool) -> Result<Expr, CycloError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        allow_vars,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses and evaluates a cyclotomic expression.
pub fn parse_cyclotomic(src: &str) -> Result<CyclotomicNumber, CycloError> {
    eval(&parse_expr(src, false)?)
}

fn eval(e: &Expr) -> Result<CyclotomicNumber, CycloError> {
    Ok(match e {
        Expr::Rational(q) => CyclotomicNumber::from_rational(q.clone()),
        Expr::Root(n) => CyclotomicNumber::root_of_unity(*n, 1),
        Expr::Var(_) => unreachable!("variables rejected by the parser"),
        Expr::Neg(a) => -eval(a)?,
        Expr::Add(a, b) => eval(a)? + eval(b)?,
        Expr::Sub(a, b) => eval(a)? - eval(b)?,
        Expr::Mul(a, b) => eval(a)? * eval(b)?,
        Expr::Div(a, b, pos) => {
            let d = eval(b)?;
            if d.is_zero() {
                return Err(CycloError::Parse {
                    position: *pos,
                    message: "division by zero".into(),
                });
            }
            eval(a)?.checked_div(&d)?
        }
        Expr::Pow(a, k, pos) => {
            let base = eval(a)?;
            if *k < 0 && base.is_zero() {
                return Err(CycloError::Parse {
                    position: *pos,
                    message: "negative power of zero".into(),
                });
            }
            base.pow(*k)?
        }
    })
}

impl Parser<'_> {
    fn error(&self, message: &str) -> CycloError {
        CycloError::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), CycloError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, CycloError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, CycloError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, CycloError> {
        // unary minus on a non-numeric factor
        if self.peek() == Some(b'-') && !self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            let at = self.pos;
            self.pos += 1;
            self.skip_ws();
            let k = self.signed_int()?;
            let k: i64 = k.try_into().map_err(|_| CycloError::Parse {
                position: at,
                message: "exponent too large".into(),
            })?;
            return Ok(Expr::Pow(Box::new(base), k, at));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, CycloError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'E') => {
                self.pos += 1;
                self.expect(b'(')?;
                self.skip_ws();
                let at = self.pos;
                let n = self.unsigned_int()?;
                if n.is_zero() {
                    return Err(CycloError::Parse {
                        position: at,
                        message: "E(0) is not a root of unity".into(),
                    });
                }
                let n: u32 = n.try_into().map_err(|_| CycloError::Parse {
                    position: at,
                    message: "conductor too large".into(),
                })?;
                self.expect(b')')?;
                Ok(Expr::Root(n))
            }
            Some(b'x') if self.allow_vars => {
                self.pos += 1;
                let at = self.pos;
                let i = self.unsigned_int()?;
                let i: usize =
                    i.try_into()
                        .ok()
                        .filter(|&i: &usize| i >= 1)
                        .ok_or(CycloError::Parse {
                            position: at,
                            message: "variables are numbered from x1".into(),
                        })?;
                Ok(Expr::Var(i - 1))
            }
            Some(c) if c.is_ascii_digit() || c == b'-' || c == b'+' => self.rational(),
            Some(_) => Err(self.error("expected a number, E(n) or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn rational(&mut self) -> Result<Expr, CycloError> {
        let p = self.signed_int()?;
        // p/q literal only without interior spaces
        if self.src.get(self.pos) == Some(&b'/')
            && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
        {
            let at = self.pos;
            self.pos += 1;
            let q = self.unsigned_int()?;
            if q.is_zero() {
                return Err(CycloError::Parse {
                    position: at,
                    message: "division by zero".into(),
                });
            }
            return Ok(Expr::Rational(BigRational::new(p, q)));
        }
        Ok(Expr::Rational(BigRational::from_integer(p)))
    }

    fn signed_int(&mut self) -> Result<BigInt, CycloError> {
        let neg = match self.src.get(self.pos) {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let v = self.unsigned_int()?;
        Ok(if neg { -v } else { v })
    }

    fn unsigned_int(&mut self) -> Result<BigInt, CycloError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }
}
