//! Term grammar:
//!
//! ```text
//! join    := meet ('\/' meet)*
//! meet    := sum ('/\' sum)*
//! sum     := ['-'] product (('+' | '-') product)*
//! product := rational ['*' postfix] | postfix
//! postfix := atom ('^+')*
//! atom    := 'g' digits | 'one' | '(' join ')' | '|' join '|'
//! ```
//!
//! A bare rational `q` stands for `q·one`.

use num::{BigInt, Zero};

use super::VLTerm;
use crate::error::{Error, Result};
use crate::semilinear::Rational;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at(&mut self, s: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.at(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        (len > 0).then(|| {
            self.pos += len;
            &self.src[start..start + len]
        })
    }

    fn rational(&mut self) -> Result<Option<Rational>> {
        self.skip_ws();
        let Some(num) = self.digits() else { return Ok(None) };
        let num: BigInt = num.parse().expect("digits");
        let save = self.pos;
        // `/` followed by `\` is a meet, not a fraction bar
        if self.eat("/") && !self.src[self.pos..].starts_with('\\') {
            self.skip_ws();
            if let Some(den) = self.digits() {
                let den: BigInt = den.parse().expect("digits");
                if den.is_zero() {
                    return Err(self.err("division by zero"));
                }
                return Ok(Some(Rational::new(num, den)));
            }
        }
        self.pos = save;
        Ok(Some(Rational::from_integer(num)))
    }

    fn join(&mut self) -> Result<VLTerm> {
        let mut t = self.meet()?;
        while self.eat("\\/") {
            t = t.join(self.meet()?);
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<VLTerm> {
        let mut t = self.sum()?;
        while self.eat("/\\") {
            t = t.meet(self.sum()?);
        }
        Ok(t)
    }

    fn sum(&mut self) -> Result<VLTerm> {
        let neg = self.eat("-");
        let mut t = self.product()?;
        if neg {
            t = t.neg();
        }
        loop {
            if self.eat("+") {
                t = t.add(self.product()?);
            } else if self.eat("-") {
                t = t.sub(self.product()?);
            } else {
                return Ok(t);
            }
        }
    }

    fn product(&mut self) -> Result<VLTerm> {
        match self.rational()? {
            Some(q) if self.eat("*") => Ok(self.postfix()?.scale(q)),
            Some(q) => Ok(VLTerm::constant(q)),
            None => self.postfix(),
        }
    }

    fn postfix(&mut self) -> Result<VLTerm> {
        let mut t = self.atom()?;
        while self.eat("^+") {
            t = t.pos();
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<VLTerm> {
        if self.eat("(") {
            let t = self.join()?;
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(t);
        }
        if self.eat("|") {
            let t = self.join()?;
            if !self.eat("|") {
                return Err(self.err("expected closing `|`"));
            }
            return Ok(t.abs());
        }
        if self.eat("one") {
            return Ok(VLTerm::One);
        }
        if self.at("g") {
            let start = self.pos;
            self.pos += 1;
            let Some(d) = self.digits() else { return Err(self.err("expected a generator number after `g`")) };
            let i: usize = d.parse().map_err(|_| self.err("generator number too large"))?;
            if i >= self.n {
                self.pos = start;
                return Err(self.err(format!("generator g{i} outside g0..g{}", self.n.saturating_sub(1))));
            }
            return Ok(VLTerm::Gen(i));
        }
        Err(self.err("expected a term"))
    }
}

/// Parses a term whose generators are among `g0 … g{n-1}`.
pub fn parse_term(text: &str, n: usize) -> Result<VLTerm> {
    let mut p = Parser { src: text, pos: 0, n };
    let t = p.join()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilinear::ratio;

    #[test]
    fn precedence() {
        let t = parse_term("g0 \\/ g1 /\\ g2 + g0", 3).unwrap();
        let expect = VLTerm::gen(0).join(VLTerm::gen(1).meet(VLTerm::gen(2).add(VLTerm::gen(0))));
        assert_eq!(t, expect);
    }

    #[test]
    fn fractions_and_meets_do_not_clash() {
        let t = parse_term("1/2*g0 /\\ 3/\\g1", 2).unwrap();
        let expect = VLTerm::gen(0).scale(ratio(1, 2)).meet(VLTerm::constant(ratio(3, 1))).meet(VLTerm::gen(1));
        assert_eq!(t, expect);
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse_term("g0 + g3", 3), Err(Error::Parse { offset: 5, .. })));
        assert!(matches!(parse_term("(g0", 1), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(parse_term("g0 g1", 2), Err(Error::Parse { offset: 3, .. })));
        assert!(parse_term("1/0*g0", 1).is_err());
        assert!(parse_term("", 1).is_err());
    }
}
