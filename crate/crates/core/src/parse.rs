//! Text syntax for field elements and polynomials.
//!
//! Grammar (whitespace ignored, `*` optional between factors):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor | factor)*
//! factor := atom ['^' exp]
//! atom   := integer | 't' | 'x' | '(' expr ')'
//! exp    := integer | '-' integer | '(' ['-'] integer ['/' integer] ')'
//! ```
//!
//! Fractional exponents apply only to `t` and only in the perfect hull.
//! Division is allowed by anything that does not involve `x`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::basefield::{FieldError, FieldSpec, KElem};
use crate::ordgroup::Rat;
use crate::poly::PolyK;

fn err(msg: impl Into<String>) -> FieldError {
    FieldError::Parse(msg.into())
}

struct Parser<'a> {
    field: FieldSpec,
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

enum Atom {
    T,
    Other(PolyK),
}

impl<'a> Parser<'a> {
    fn new(field: FieldSpec, src: &'a str) -> Self {
        Parser { field, chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), FieldError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(format!("expected '{c}' at position {} in {:?}", self.pos, self.src)))
        }
    }

    fn integer(&mut self) -> Result<BigInt, FieldError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected a number at position {start} in {:?}", self.src)));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().unwrap())
    }

    fn expr(&mut self) -> Result<PolyK, FieldError> {
        let neg = self.eat('-');
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == 't' || c == 'x' || c == '(')
    }

    fn term(&mut self) -> Result<PolyK, FieldError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.checked_mul(&self.factor()?)?;
            } else if self.eat('/') {
                let d = self.factor()?;
                let d = d.as_constant().ok_or_else(|| err("cannot divide by a polynomial in x"))?;
                acc = acc.scale(&d.inv()?);
            } else if self.starts_factor() {
                acc = acc.checked_mul(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn exponent(&mut self) -> Result<Rat, FieldError> {
        if self.eat('(') {
            let neg = self.eat('-');
            let n = self.integer()?;
            let d = if self.eat('/') { self.integer()? } else { BigInt::one() };
            self.expect(')')?;
            if d.is_zero() {
                return Err(FieldError::DivisionByZero);
            }
            let r = Rat::new(n, d);
            Ok(if neg { -r } else { r })
        } else {
            let neg = self.eat('-');
            let n = Rat::from_integer(self.integer()?);
            Ok(if neg { -n } else { n })
        }
    }

    fn atom(&mut self) -> Result<Atom, FieldError> {
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                Ok(Atom::T)
            }
            Some('x') => {
                self.pos += 1;
                Ok(Atom::Other(PolyK::x(self.field)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(Atom::Other(e))
            }
            _ => {
                let n = self.integer()?;
                Ok(Atom::Other(PolyK::constant(KElem::from_bigint(self.field, &n))))
            }
        }
    }

    fn factor(&mut self) -> Result<PolyK, FieldError> {
        let atom = self.atom()?;
        let e = if self.eat('^') { Some(self.exponent()?) } else { None };
        match atom {
            Atom::T => {
                let e = e.unwrap_or_else(Rat::one);
                Ok(PolyK::constant(KElem::t_pow(self.field, &e)?))
            }
            Atom::Other(base) => {
                let Some(e) = e else { return Ok(base) };
                if !e.is_integer() {
                    return Err(err(format!("fractional exponent {e} is only allowed on t")));
                }
                let n = e.to_integer().to_i64().ok_or_else(|| err("exponent too large"))?;
                if n >= 0 {
                    let n = u32::try_from(n).map_err(|_| err("exponent too large"))?;
                    return Ok(base.pow(n));
                }
                let c = base.as_constant().ok_or_else(|| err("negative power of a polynomial in x"))?;
                Ok(PolyK::constant(c.pow(n)?))
            }
        }
    }

    fn finish(&self) -> Result<(), FieldError> {
        if self.pos != self.chars.len() {
            return Err(err(format!("unexpected '{}' in {:?}", self.chars[self.pos], self.src)));
        }
        Ok(())
    }
}

/// Parse a polynomial in `x`, e.g. `x^3 + t*x + 1`.
pub fn parse_poly(field: FieldSpec, s: &str) -> Result<PolyK, FieldError> {
    let mut p = Parser::new(field, s);
    let f = p.expr()?;
    p.finish()?;
    Ok(f)
}

/// Parse an element, e.g. `3/4`, `(t^2+1)/(t+1)`, `t^(-1/4)`.
pub fn parse_elem(field: FieldSpec, s: &str) -> Result<KElem, FieldError> {
    parse_poly(field, s)?.as_constant().ok_or_else(|| err(format!("{s:?} involves x")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::ValueQ;
    use crate::ordgroup::rat;

    #[test]
    fn elements() {
        let q = FieldSpec::rat_p(5).unwrap();
        assert_eq!(parse_elem(q, "-3/4").unwrap(), KElem::from_rat(q, &rat(-3, 4)).unwrap());
        assert_eq!(parse_elem(q, "2^-2").unwrap(), KElem::from_rat(q, &rat(1, 4)).unwrap());
        assert!(matches!(parse_elem(q, "t"), Err(FieldError::NoParameter(_))));

        let f = FieldSpec::rat_fun(3).unwrap();
        let e = parse_elem(f, "(t^2+1)/(t+1)").unwrap();
        assert_eq!(&e * &parse_elem(f, "t+1").unwrap(), parse_elem(f, "t^2+1").unwrap());
        assert!(parse_elem(f, "t^(1/3)").is_err());
        assert!(parse_elem(f, "x").is_err());

        let h = FieldSpec::perfect_hull(2).unwrap();
        let e = parse_elem(h, "t^(-1/4)").unwrap();
        assert_eq!(e.val(), ValueQ::Fin(rat(-1, 4)));
        assert_eq!(parse_elem(h, &e.to_string()).unwrap(), e);
        assert_eq!(parse_elem(h, "2t").unwrap(), KElem::zero(h));
    }

    #[test]
    fn polynomials() {
        let f = FieldSpec::rat_fun(2).unwrap();
        let g = parse_poly(f, "x^2 + x + t").unwrap();
        assert_eq!(g.degree(), Some(2));
        assert_eq!(parse_poly(f, "x^2 - x + t").unwrap(), g);
        assert_eq!(parse_poly(f, "(x+1)(x+1)").unwrap(), parse_poly(f, "x^2+1").unwrap());
        assert!(parse_poly(f, "1/x").is_err());
        assert!(parse_poly(f, "x +").is_err());
        assert!(parse_poly(f, "x)").is_err());
    }
}
