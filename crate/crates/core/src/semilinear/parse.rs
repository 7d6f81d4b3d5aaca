//! Textual atoms such as `2*x1 - 1/3*x2 + 1 > 0`.
//!
//! Both sides are linear expressions over `x1 … xn`; relations are
//! `>`, `>=`, `=`, `<`, `<=`.

use num::{BigInt, One, Zero};

use super::{Atom, LinearForm, Rational, Rel};
use crate::error::{Error, Result};

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&self.src[start..start + len])
    }

    /// `123` or `123/45`.
    fn rational(&mut self) -> Result<Option<Rational>> {
        let Some(num) = self.digits() else { return Ok(None) };
        let num: BigInt = num.parse().expect("digits");
        let save = self.pos;
        if self.eat("/") {
            match self.digits() {
                Some(den) => {
                    let den: BigInt = den.parse().expect("digits");
                    if den.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    return Ok(Some(Rational::new(num, den)));
                }
                None => self.pos = save,
            }
        }
        Ok(Some(Rational::from_integer(num)))
    }

    fn var(&mut self, dim: usize) -> Result<Option<usize>> {
        self.skip_ws();
        if !self.src[self.pos..].starts_with('x') {
            return Ok(None);
        }
        let at = self.pos;
        self.pos += 1;
        let Some(d) = self.digits() else { return Err(self.err("expected a variable number after `x`")) };
        let i: usize = d.parse().map_err(|_| self.err("variable number too large"))?;
        if i == 0 || i > dim {
            self.pos = at;
            return Err(self.err(format!("variable x{i} outside x1..x{dim}")));
        }
        Ok(Some(i - 1))
    }

    fn expr(&mut self, dim: usize) -> Result<LinearForm> {
        let mut form = LinearForm::zero(dim);
        let mut first = true;
        loop {
            let sign = if self.eat("+") {
                Rational::one()
            } else if self.eat("-") {
                -Rational::one()
            } else if first {
                Rational::one()
            } else {
                return Ok(form);
            };
            first = false;
            let coeff = self.rational()?;
            let had_coeff = coeff.is_some();
            let coeff = sign * coeff.unwrap_or_else(Rational::one);
            let star = self.eat("*");
            match self.var(dim)? {
                Some(i) => form.coeffs[i] += coeff,
                None if star => return Err(self.err("expected a variable after `*`")),
                None if had_coeff => form.constant += coeff,
                None => return Err(self.err("expected a number or a variable")),
            }
        }
    }
}

/// Parses one atom in dimension `dim`.
pub fn parse_atom(text: &str, dim: usize) -> Result<Atom> {
    let mut lx = Lexer { src: text, pos: 0 };
    let lhs = lx.expr(dim)?;
    let rel = if lx.eat(">=") {
        (Rel::Ge, false)
    } else if lx.eat("<=") {
        (Rel::Ge, true)
    } else if lx.eat(">") {
        (Rel::Gt, false)
    } else if lx.eat("<") {
        (Rel::Gt, true)
    } else if lx.eat("=") {
        (Rel::Eq, false)
    } else {
        return Err(lx.err("expected one of > >= = < <="));
    };
    let rhs = lx.expr(dim)?;
    if lx.peek().is_some() {
        return Err(lx.err("trailing input"));
    }
    let (rel, flip) = rel;
    let form = if flip { rhs.sub(&lhs) } else { lhs.sub(&rhs) };
    Ok(Atom::new(form, rel))
}

/// Parses `p` or `p/q`, optionally signed.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let mut lx = Lexer { src: text, pos: 0 };
    let neg = lx.eat("-");
    if !neg {
        lx.eat("+");
    }
    let q = lx.rational()?.ok_or_else(|| lx.err("expected a rational number"))?;
    if lx.peek().is_some() {
        return Err(lx.err("trailing input"));
    }
    Ok(if neg { -q } else { q })
}
