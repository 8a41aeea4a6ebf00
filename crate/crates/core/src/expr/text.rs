//! Small recursive-descent helpers for the canonical text grammar.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Polynomial, Rat};

pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn looking_at(&mut self, tok: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(tok)
    }

    pub fn eat(&mut self, tok: &str) -> bool {
        if self.looking_at(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {tok:?}")))
        }
    }

    pub fn error(&self, message: String) -> Error {
        Error::Parse {
            position: self.pos,
            message,
        }
    }

    pub fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected trailing text {:?}", self.rest())))
        }
    }

    pub fn parse_uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.error("expected an integer".into()));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| self.error("integer out of range".into()))
    }

    pub fn parse_bigint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let neg = self.eat("-");
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.error("expected an integer".into()));
        }
        self.pos += digits.len();
        let v: BigInt = digits.parse().unwrap();
        Ok(if neg { -v } else { v })
    }

    /// `[-]p[/q]`
    pub fn parse_rat(&mut self) -> Result<Rat> {
        let p = self.parse_bigint()?;
        let save = self.pos;
        if self.eat("/") && self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let q = self.parse_bigint()?;
            if q.is_zero() {
                return Err(self.error("zero denominator".into()));
            }
            return Ok(Rat::new(p, q));
        }
        self.pos = save;
        Ok(Rat::from_integer(p))
    }

    /// An identifier made of ASCII letters, digits and underscores.
    pub fn parse_ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .char_indices()
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map_or(self.rest().len(), |(i, _)| i);
        if len == 0 {
            return Err(self.error("expected an identifier".into()));
        }
        let s = &self.src[self.pos..self.pos + len];
        self.pos += len;
        Ok(s)
    }

    /// Text up to the matching close of an already consumed `(`.
    pub fn balanced_until_close(&mut self) -> Result<&'a str> {
        let start = self.pos;
        let mut depth = 1usize;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => {
                    depth -= 1;
                    if depth == 0 {
                        let s = &self.src[start..start + i];
                        self.pos = start + i + 1;
                        return Ok(s);
                    }
                }
                _ => {}
            }
        }
        Err(self.error("unbalanced parentheses".into()))
    }

    /// Sum of monomials over the given variables, e.g. `1 - 2*x^2*z + z`.
    pub fn parse_multi_poly(&mut self, vars: &[&str]) -> Result<BTreeMap<Vec<u32>, Rat>> {
        let mut out: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        let mut first = true;
        loop {
            let save = self.pos;
            let neg = if self.eat("-") {
                true
            } else if first {
                false
            } else if self.eat("+") {
                false
            } else {
                break;
            };
            first = false;
            // a sign followed by something else belongs to the caller
            let starts_term = self.peek().is_some_and(|c| c.is_ascii_digit())
                || vars.iter().any(|v| self.looking_at_var(v));
            if !starts_term && save != self.pos {
                self.pos = save;
                break;
            }
            let (c, exps) = self.parse_monomial(vars)?;
            let c = if neg { -c } else { c };
            *out.entry(exps).or_insert_with(Rat::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    fn parse_monomial(&mut self, vars: &[&str]) -> Result<(Rat, Vec<u32>)> {
        let mut coeff = Rat::one();
        let mut exps = vec![0u32; vars.len()];
        let mut any = false;
        loop {
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                coeff *= self.parse_rat()?;
            } else if let Some(i) = vars.iter().position(|v| self.looking_at_var(v)) {
                self.eat(vars[i]);
                let e = if self.eat("^") { self.parse_uint()? as u32 } else { 1 };
                exps[i] += e;
            } else {
                break;
            }
            any = true;
            if !self.eat("*") {
                break;
            }
        }
        if !any {
            return Err(self.error("expected a monomial".into()));
        }
        Ok((coeff, exps))
    }

    fn looking_at_var(&mut self, v: &str) -> bool {
        if !self.looking_at(v) {
            return false;
        }
        // reject identifiers that merely start with the variable name
        let after = &self.rest()[v.len()..];
        !after
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '(')
    }

    pub fn parse_poly(&mut self, var: &str) -> Result<Polynomial> {
        let terms = self.parse_multi_poly(&[var])?;
        Ok(poly_from_terms(&terms))
    }
}

pub fn poly_from_terms(terms: &BTreeMap<Vec<u32>, Rat>) -> Polynomial {
    let deg = terms.keys().map(|e| e[0] as usize).max().unwrap_or(0);
    let mut c = vec![Rat::zero(); deg + 1];
    for (e, v) in terms {
        c[e[0] as usize] += v;
    }
    Polynomial::new(c)
}

/// Parses a whole string as a univariate polynomial.
pub fn parse_polynomial(src: &str, var: &str) -> Result<Polynomial> {
    let mut c = Cursor::new(src);
    let p = c.parse_poly(var)?;
    c.finish()?;
    Ok(p)
}
