//! Expressions for Witt components: polynomials in t1..td over F_q divided by
//! monomials.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := unary (("*" | "/") unary)*
//! unary    := "-" unary | power
//! power    := atom ("^" exponent)?
//! atom     := integer | "a" | "t" index | "(" expr ")"
//! exponent := integer | "-" integer | "(" intexpr ")"
//! intexpr  := integer arithmetic with + - * and parentheses
//! ```
//! Division is only by nonzero monomials, `a` is the generator of a field
//! extension, and negative exponents are only allowed on monomials.

use crate::algebra::{Field, Poly, RationalSection};
use crate::error::{Error, Result};

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    field: &'a Field,
    nvars: usize,
    line: usize,
    col0: usize,
}

/// Parse `text` (found at `line`, starting at 1-based column `col0`) into a section on A^nvars.
pub fn parse_expr(text: &str, field: &Field, nvars: usize, line: usize, col0: usize) -> Result<RationalSection> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        field,
        nvars,
        line,
        col0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err(&format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(v)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col0 + self.pos,
            message: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
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

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<i64>().map_err(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn expr(&mut self) -> Result<RationalSection> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalSection> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                let inv = self.monomial_inverse(&d).ok_or_else(|| {
                    self.pos = at;
                    self.err("division is only allowed by nonzero monomials")
                })?;
                acc = acc.mul(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn monomial_inverse(&self, d: &RationalSection) -> Option<RationalSection> {
        if d.num().len() != 1 || d.scale() != 0 {
            return None;
        }
        let (e, c) = d.num().lex_lead()?;
        let expo: Vec<i64> = e.iter().zip(d.den()).map(|(&x, &y)| y as i64 - x as i64).collect();
        Some(RationalSection::laurent(self.field, &expo, self.field.inv(c)))
    }

    fn unary(&mut self) -> Result<RationalSection> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalSection> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.pos;
        let k = self.exponent()?;
        if k >= 0 {
            return Ok(base.pow(k as u64));
        }
        let inv = self.monomial_inverse(&base).ok_or_else(|| {
            self.pos = at;
            self.err("negative exponents are only allowed on monomials")
        })?;
        Ok(inv.pow((-k) as u64))
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat('(') {
            let v = self.int_expr()?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(v);
        }
        if self.eat('-') {
            return Ok(-self.integer()?);
        }
        self.integer()
    }

    fn int_expr(&mut self) -> Result<i64> {
        let mut acc = self.int_term()?;
        loop {
            if self.eat('+') {
                acc = acc.checked_add(self.int_term()?).ok_or_else(|| self.err("exponent overflow"))?;
            } else if self.eat('-') {
                acc = acc.checked_sub(self.int_term()?).ok_or_else(|| self.err("exponent overflow"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn int_term(&mut self) -> Result<i64> {
        let mut acc = self.int_atom()?;
        while self.eat('*') {
            acc = acc.checked_mul(self.int_atom()?).ok_or_else(|| self.err("exponent overflow"))?;
        }
        Ok(acc)
    }

    fn int_atom(&mut self) -> Result<i64> {
        if self.eat('(') {
            let v = self.int_expr()?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(v);
        }
        if self.eat('-') {
            return Ok(-self.int_atom()?);
        }
        self.integer()
    }

    fn atom(&mut self) -> Result<RationalSection> {
        self.skip_ws();
        let f = self.field;
        let n = self.nvars;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.integer()?;
                Ok(RationalSection::constant(f, n, f.from_int(k)))
            }
            Some('a') => {
                if f.degree() == 1 {
                    return Err(self.err("'a' needs a field extension modulus"));
                }
                self.pos += 1;
                Ok(RationalSection::constant(f, n, f.generator()))
            }
            Some('t') => {
                self.pos += 1;
                let at = self.pos;
                let k = self.integer()?;
                if k < 1 || k as usize > n {
                    self.pos = at;
                    return Err(self.err(&format!("variable t{k} is outside t1..t{n}")));
                }
                Ok(RationalSection::from_poly(Poly::var(f, n, k as usize - 1)))
            }
            Some(c) => Err(self.err(&format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}
