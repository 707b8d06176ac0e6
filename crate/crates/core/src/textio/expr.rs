//! Polynomial expressions.
//!
//! ```text
//! poly   := '0' | term (('+'|'-') term)*
//! term   := ['-'] factor ('*' factor)*
//! factor := coeff | var ['^' nat]
//! coeff  := '1' | 'z' ['^' nat]
//! var    := letter alnum*
//! ```

use crate::error::{Error, Result};
use crate::poly::{Monomial, PolyRing, Polynomial};
use crate::scalars::{Scalar, SemifieldSpec, Semifield};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a PolyRing,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn nat(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| syntax(start, "exponent out of range"))
    }

    fn ident(&mut self) -> (usize, &'a str) {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        (start, std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.nat()
        } else {
            Ok(1)
        }
    }

    /// Multiplies one factor into (coefficient, exponents).
    fn factor(&mut self, coeff: &mut Scalar, exps: &mut [u32]) -> Result<()> {
        let base = self.ring.base();
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(syntax(self.pos - 1, "the only numeric coefficient is 1"));
                }
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let (start, name) = self.ident();
                if name == "z" {
                    let SemifieldSpec::Cyclotomic(k) = base.spec() else {
                        return Err(syntax(start, "`z` needs a cyclotomic base"));
                    };
                    let e = self.exponent()?;
                    let z = Scalar::unit(e % (2 * k));
                    *coeff = base.mul(coeff, &z);
                    return Ok(());
                }
                let Some(i) = self.ring.vars().iter().position(|v| v == name) else {
                    return Err(syntax(start, format!("unknown variable `{name}`")));
                };
                let e = self.exponent()?;
                exps[i] = exps[i].checked_add(e).ok_or_else(|| syntax(start, "exponent out of range"))?;
                Ok(())
            }
            Some(_) => Err(syntax(self.pos, "expected `1`, `z` or a variable")),
            None => Err(syntax(self.pos, "unexpected end of input")),
        }
    }

    fn term(&mut self, negate: bool) -> Result<Polynomial> {
        let base = self.ring.base();
        let mut coeff = if negate { base.minus_one() } else { base.one() };
        if self.peek() == Some(b'-') {
            self.pos += 1;
            coeff = base.neg(&coeff);
        }
        let mut exps = vec![0; self.ring.nvars()];
        self.factor(&mut coeff, &mut exps)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut coeff, &mut exps)?;
        }
        Ok(Polynomial::term(coeff, Monomial(exps)))
    }

    fn poly(&mut self) -> Result<Polynomial> {
        if self.peek() == Some(b'0') {
            self.pos += 1;
            return self.finish(self.ring.zero());
        }
        let mut acc = self.term(false)?;
        loop {
            let negate = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
            let t = self.term(negate)?;
            acc = self.ring.add(&acc, &t)?;
        }
        self.finish(acc)
    }

    fn finish(&mut self, p: Polynomial) -> Result<Polynomial> {
        match self.peek() {
            None => Ok(p),
            Some(c) => Err(syntax(self.pos, format!("unexpected `{}`", c as char))),
        }
    }
}

/// Parses a polynomial in `ring`. Sums use the ring's addition, so a
/// cancelling monomial makes the whole expression 0.
pub fn parse_poly(text: &str, ring: &PolyRing) -> Result<Polynomial> {
    Parser { src: text.as_bytes(), pos: 0, ring }.poly()
}

/// Variable names appearing in the expressions, in natural order
/// (`x2` before `x10`). `z` is excluded over cyclotomic bases.
pub fn collect_variables<'a>(texts: impl IntoIterator<Item = &'a str>, base: &Semifield) -> Vec<String> {
    let cyclotomic = matches!(base.spec(), SemifieldSpec::Cyclotomic(_));
    let mut vars: Vec<String> = Vec::new();
    for t in texts {
        let b = t.as_bytes();
        let mut i = 0;
        while i < b.len() {
            if b[i].is_ascii_alphabetic() {
                let s = i;
                while i < b.len() && b[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let name = &t[s..i];
                if !(cyclotomic && name == "z") && !vars.iter().any(|v| v == name) {
                    vars.push(name.to_string());
                }
            } else {
                i += 1;
            }
        }
    }
    vars.sort_by_key(|v| natural_key(v));
    vars
}

fn natural_key(v: &str) -> (String, u64, String) {
    let split = v.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (head, tail) = v.split_at(split);
    (head.to_string(), tail.parse().unwrap_or(0), v.to_string())
}
