//! Expression grammar for Laurent polynomials.
//!
//! ```text
//! expr     := ['+' | '-'] term (('+' | '-') term)*
//! term     := power (('*' | '/' | <juxtaposition>) power)*
//! power    := atom ['^' exponent]
//! atom     := INTEGER | VARIABLE | '(' expr ')'
//! exponent := ['-'] INTEGER | '(' ['-'] INTEGER ['/' INTEGER] ')'
//! ```
//!
//! Variables are one letter followed by optional digits (`x`, `y`, `x3`,
//! `t`), so `x^2y` reads as `x^2 * y`. Division is only allowed by units
//! `±e^w`. Half-integer exponents are accepted for `SO(2n)` and apply to
//! monomial bases only. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::lattice::{Family, GroupType, Weight};

pub(super) fn parse(group: GroupType, text: &str) -> Result<LaurentPoly> {
    let mut p = Parser { group, chars: text.chars().collect(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(Error::parse(p.pos, format!("unexpected `{}`", p.chars[p.pos])));
    }
    p.to_poly(out, 0)
}

/// Intermediate value. Products of monomials are kept as raw coordinate
/// vectors so that factors such as `x^(1/2)`, which are not lattice points on
/// their own, can combine into `x^(1/2)y^(1/2)z^(1/2)`.
enum Val {
    Mono { coef: BigInt, coords: Vec<i64> },
    Poly(LaurentPoly),
}

struct Parser {
    group: GroupType,
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
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

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{c}`")))
        }
    }

    fn to_poly(&self, v: Val, pos: usize) -> Result<LaurentPoly> {
        match v {
            Val::Poly(p) => Ok(p),
            Val::Mono { coef, coords } => {
                let w = Weight::new(self.group, coords).map_err(|e| match e {
                    Error::Lattice(m) => Error::Lattice(format!("{m} (term ending at position {pos})")),
                    other => other,
                })?;
                Ok(LaurentPoly::term(w, coef))
            }
        }
    }

    fn mul(&self, a: Val, b: Val, pos: usize) -> Result<Val> {
        match (a, b) {
            (Val::Mono { coef: c1, coords: v1 }, Val::Mono { coef: c2, coords: v2 }) => {
                Ok(Val::Mono { coef: c1 * c2, coords: v1.iter().zip(&v2).map(|(x, y)| x + y).collect() })
            }
            (a, b) => Ok(Val::Poly(&self.to_poly(a, pos)? * &self.to_poly(b, pos)?)),
        }
    }

    fn expr(&mut self) -> Result<Val> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut first = self.term()?;
        if negate {
            first = match first {
                Val::Mono { coef, coords } => Val::Mono { coef: -coef, coords },
                Val::Poly(p) => Val::Poly(-p),
            };
        }
        if !matches!(self.peek(), Some('+') | Some('-')) {
            return Ok(first);
        }
        let mut acc = self.to_poly(first, self.pos)?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc += &self.to_poly(t, self.pos)?;
            } else if self.eat('-') {
                let t = self.term()?;
                acc -= &self.to_poly(t, self.pos)?;
            } else {
                return Ok(Val::Poly(acc));
            }
        }
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = self.mul(acc, rhs, self.pos)?;
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    let inv = self.invert(d, at)?;
                    acc = self.mul(acc, inv, self.pos)?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    let rhs = self.power()?;
                    acc = self.mul(acc, rhs, self.pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Inverts a unit `±e^w`.
    fn invert(&self, v: Val, at: usize) -> Result<Val> {
        let err = || Error::parse(at, "only monomials ±x^a can be inverted");
        match v {
            Val::Mono { coef, coords } if coef.abs().is_one() => {
                Ok(Val::Mono { coef, coords: coords.iter().map(|c| -c).collect() })
            }
            Val::Mono { .. } => Err(err()),
            Val::Poly(p) => {
                let inv = p.unit_inverse().ok_or_else(err)?;
                let (w, c) = inv.as_monomial().expect("unit");
                Ok(Val::Mono { coef: c.clone(), coords: w.coords().to_vec() })
            }
        }
    }

    fn power(&mut self) -> Result<Val> {
        let base_pos = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp_pos = self.pos;
        let (num, den) = self.exponent()?;
        if den != 1 && den != 2 {
            return Err(Error::parse(exp_pos, "exponent denominator must be 1 or 2"));
        }
        if den == 2 && self.group.family() != Family::SOEven {
            return Err(Error::parse(
                exp_pos,
                format!("half-integer exponents need an SO(2n) group, not {}", self.group),
            ));
        }
        if den == 1 && num >= 0 {
            return match base {
                Val::Mono { coef, coords } => Ok(Val::Mono {
                    coef: num_traits::pow(coef, num as usize),
                    coords: coords.iter().map(|c| c * num).collect(),
                }),
                Val::Poly(p) => Ok(Val::Poly(p.pow(num as u32))),
            };
        }
        let base = match base {
            Val::Poly(p) => match p.as_monomial() {
                Some((w, c)) => Val::Mono { coef: c.clone(), coords: w.coords().to_vec() },
                None => return Err(Error::parse(base_pos, "negative or fractional powers need a monomial base")),
            },
            m => m,
        };
        let Val::Mono { coef, coords } = base else { unreachable!() };
        if den == 2 && !coef.is_one() {
            return Err(Error::parse(base_pos, "half-integer powers need coefficient 1"));
        }
        if num < 0 && !coef.abs().is_one() {
            return Err(Error::parse(base_pos, "negative powers need a unit coefficient"));
        }
        let mut out = Vec::with_capacity(coords.len());
        for &d in &coords {
            let v = d * num;
            if v % den != 0 {
                return Err(Error::Lattice(format!("exponent at position {exp_pos} leaves the lattice")));
            }
            out.push(v / den);
        }
        let coef = if num < 0 && num % 2 != 0 { coef } else { coef.abs() };
        Ok(Val::Mono { coef, coords: out })
    }

    fn exponent(&mut self) -> Result<(i64, i64)> {
        if self.eat('(') {
            let neg = self.eat('-');
            let num = self.small_int()?;
            let den = if self.eat('/') { self.small_int()? } else { 1 };
            self.expect(')')?;
            if den == 0 {
                return Err(Error::parse(self.pos, "zero denominator"));
            }
            Ok((if neg { -num } else { num }, den))
        } else {
            let neg = self.eat('-');
            let num = self.small_int()?;
            Ok((if neg { -num } else { num }, 1))
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(Error::parse(start, "expected an integer"));
        }
        digits.parse::<i64>().ok().filter(|v| *v <= 4096).ok_or_else(|| Error::parse(start, "exponent too large"))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Val> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.digits();
                let v: BigInt = digits.parse().map_err(|_| Error::parse(start, "bad integer"))?;
                Ok(Val::Mono { coef: v, coords: vec![0; self.group.n()] })
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let idx = self.group.variable_index(&name).ok_or(Error::UnknownVariable { name, pos: start })?;
                let step = if self.group.family() == Family::SOEven { 2 } else { 1 };
                let mut coords = vec![0; self.group.n()];
                coords[idx] = step;
                Ok(Val::Mono { coef: BigInt::one(), coords })
            }
            Some(c) => Err(Error::parse(self.pos, format!("unexpected `{c}`"))),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_term() {
        let g = GroupType::su(3).unwrap();
        let f = parse(g, "x^2*y - 3").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coefficient(&Weight::new(g, vec![2, 1, 0]).unwrap()), 1.into());
        assert_eq!(f.coefficient(&Weight::zero(g)), (-3).into());
    }

    #[test]
    fn inverses_and_groups() {
        let g3 = GroupType::su(3).unwrap();
        let f = parse(g3, "x + 1/y + y/x").unwrap();
        let expected = LaurentPoly::from_terms(
            g3,
            [
                (Weight::new(g3, vec![1, 0, 0]).unwrap(), 1.into()),
                (Weight::new(g3, vec![0, -1, 0]).unwrap(), 1.into()),
                (Weight::new(g3, vec![-1, 1, 0]).unwrap(), 1.into()),
            ],
        )
        .unwrap();
        assert_eq!(f, expected);
        let g2 = GroupType::su(2).unwrap();
        assert!(matches!(parse(g2, "x + 1/y + y/x"), Err(Error::UnknownVariable { pos: 0, .. })));
    }

    #[test]
    fn spin_weights() {
        let so6 = GroupType::so_even(3).unwrap();
        let f = parse(so6, "(x*y*z)^(1/2)").unwrap();
        assert_eq!(f.as_monomial().unwrap().0.coords(), &[1, 1, 1]);
        let g = parse(so6, "x^(1/2)y^(-1/2)z^(-1/2)").unwrap();
        assert_eq!(g.as_monomial().unwrap().0.coords(), &[1, -1, -1]);
        assert!(matches!(parse(so6, "x^(1/2)"), Err(Error::Lattice(_))));
        let h = parse(so6, "x^(1/2)y^(1/2)z^(1/2)").unwrap();
        assert_eq!(h, f);
        let su3 = GroupType::su(3).unwrap();
        assert!(matches!(parse(su3, "(x*y*z)^(1/2)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let g = GroupType::su(3).unwrap();
        assert!(matches!(parse(g, "x + * y"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse(g, "(x + y"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse(g, "x / (x + y)"), Err(Error::Parse { .. })));
        assert!(matches!(parse(g, "x + w"), Err(Error::UnknownVariable { pos: 4, .. })));
    }

    #[test]
    fn whitespace_and_juxtaposition() {
        let g = GroupType::su(3).unwrap();
        assert_eq!(parse(g, " 3 x ^ 2 y ").unwrap(), parse(g, "3*x^2*y").unwrap());
        assert_eq!(parse(g, "2(x+y)").unwrap(), parse(g, "2x + 2y").unwrap());
        assert_eq!(parse(g, "x^-1").unwrap(), parse(g, "y*z").unwrap());
        assert_eq!(parse(g, "x^(-2)").unwrap(), parse(g, "1/x/x").unwrap());
    }
}
