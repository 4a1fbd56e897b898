//! Exact Laurent polynomials over a weight lattice: the ring `R(T) = Z[Λ]`.

mod parse;
mod subst;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{canonicalize, Family, GroupType, Weight};

pub use subst::{substitute, MonomialMap};

/// A finite `Z`-combination of weights. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    group: GroupType,
    terms: BTreeMap<Weight, BigInt>,
}

impl LaurentPoly {
    pub fn zero(group: GroupType) -> Self {
        LaurentPoly { group, terms: BTreeMap::new() }
    }

    pub fn one(group: GroupType) -> Self {
        Self::monomial(Weight::zero(group))
    }

    pub fn constant(group: GroupType, c: impl Into<BigInt>) -> Self {
        Self::term(Weight::zero(group), c)
    }

    pub fn monomial(w: Weight) -> Self {
        Self::term(w, 1)
    }

    pub fn term(w: Weight, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(w.group());
        p.add_term(w, c.into());
        p
    }

    /// Builds a polynomial from `(weight, coefficient)` pairs, merging duplicates.
    pub fn from_terms(group: GroupType, terms: impl IntoIterator<Item = (Weight, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(group);
        for (w, c) in terms {
            group.check_same(&w.group())?;
            p.add_term(w, c);
        }
        Ok(p)
    }

    pub fn group(&self) -> GroupType {
        self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Weight, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Weight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Graded-lex largest term.
    pub fn leading_term(&self) -> Option<(&Weight, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// `Some((w, c))` when the polynomial is the single term `c e^w`.
    pub fn as_monomial(&self) -> Option<(&Weight, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// `Some(c)` when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Weight::zero(self.group)).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Weight, c: BigInt) {
        debug_assert_eq!(w.group(), self.group);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.group.check_same(&other.group)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.group.check_same(&other.group)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.group.check_same(&other.group)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.group);
        }
        LaurentPoly { group: self.group, terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect() }
    }

    /// Multiplies by the monomial `e^w`.
    pub fn shift(&self, w: &Weight) -> Self {
        let mut out = Self::zero(self.group);
        for (v, c) in &self.terms {
            out.add_term(v.add(w), c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.group);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a unit `±e^w`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (w, c) = self.as_monomial()?;
        if c.abs().is_one() {
            Some(Self::term(w.neg(), c.clone()))
        } else {
            None
        }
    }

    /// Applies a coordinate map to every weight (used by the Weyl action).
    pub(crate) fn map_weights(&self, mut f: impl FnMut(&Weight) -> Weight) -> Self {
        let mut out = Self::zero(self.group);
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Exact division in `Z[Λ]`.
    ///
    /// Division runs in the free Laurent ring on lattice coordinates with
    /// lexicographic leading terms. Candidate quotient terms are confined to
    /// the box cut out by the Newton polytopes of dividend and divisor, which
    /// bounds the loop when the division is not exact.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.group.check_same(&divisor.group)?;
        if divisor.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.group));
        }
        let flat = |p: &Self| -> BTreeMap<Vec<i64>, BigInt> {
            p.terms.iter().map(|(w, c)| (w.lattice_coords(), c.clone())).collect()
        };
        let mut rem = flat(self);
        let den = flat(divisor);
        let r = self.group.lattice_rank();
        let bounds = |p: &BTreeMap<Vec<i64>, BigInt>| -> (Vec<i64>, Vec<i64>) {
            let mut lo = vec![i64::MAX; r];
            let mut hi = vec![i64::MIN; r];
            for k in p.keys() {
                for i in 0..r {
                    lo[i] = lo[i].min(k[i]);
                    hi[i] = hi[i].max(k[i]);
                }
            }
            (lo, hi)
        };
        let (alo, ahi) = bounds(&rem);
        let (blo, bhi) = bounds(&den);
        let qlo: Vec<i64> = (0..r).map(|i| alo[i] - blo[i]).collect();
        let qhi: Vec<i64> = (0..r).map(|i| ahi[i] - bhi[i]).collect();
        let (lead_w, lead_c) = den.iter().next_back().map(|(k, c)| (k.clone(), c.clone())).unwrap();

        let not_exact = || Error::Domain("division is not exact".into());
        let mut quot = Self::zero(self.group);
        while let Some((top, c)) = rem.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            let t: Vec<i64> = top.iter().zip(&lead_w).map(|(a, b)| a - b).collect();
            if (0..r).any(|i| t[i] < qlo[i] || t[i] > qhi[i]) {
                return Err(not_exact());
            }
            if !(&c % &lead_c).is_zero() {
                return Err(not_exact());
            }
            let qc = &c / &lead_c;
            for (k, d) in &den {
                let key: Vec<i64> = k.iter().zip(&t).map(|(a, b)| a + b).collect();
                let entry = rem.entry(key.clone()).or_default();
                *entry -= &qc * d;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.add_term(Weight::from_lattice_coords(self.group, &t)?, qc);
        }
        Ok(quot)
    }

    /// Parses the expression grammar (see module docs of `parse`).
    pub fn parse(group: GroupType, text: &str) -> Result<Self> {
        parse::parse(group, text)
    }

    /// Structured form: `[{"weight": [...], "text": "(..)", "coefficient": "..."}]`
    /// in descending graded-lex order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(w, c)| {
                    json!({
                        "weight": w.coords(),
                        "text": w.to_string(),
                        "coefficient": c.to_string(),
                    })
                })
                .collect(),
        )
    }
}

/// Compact monomial text such as `x^2y`, `t^-1` or `x^(1/2)y^(1/2)z^(1/2)`;
/// the zero weight prints as the empty string.
pub fn monomial_text(w: &Weight) -> String {
    let g = w.group();
    let names = g.variable_names();
    let c = w.coords();
    let mut out = String::new();
    if g.family() == Family::SU && g.n() == 2 {
        let k = c[0] - c[1];
        return match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
    }
    for (i, &e) in c.iter().enumerate() {
        if e == 0 {
            continue;
        }
        out.push_str(&names[i]);
        match g.family() {
            Family::SU => push_int_exponent(&mut out, e),
            Family::SOEven if e % 2 == 0 => push_int_exponent(&mut out, e / 2),
            Family::SOEven => out.push_str(&format!("^({e}/2)")),
        }
    }
    out
}

fn push_int_exponent(out: &mut String, e: i64) {
    if e != 1 {
        out.push_str(&format!("^{e}"));
    }
}

/// Monomial text with `1` for the zero weight.
pub fn weight_label(w: &Weight) -> String {
    let s = monomial_text(w);
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mono = monomial_text(w);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    /// Panics if the groups differ; use [`LaurentPoly::checked_add`] otherwise.
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        assert_eq!(self.group, rhs.group, "group mismatch in LaurentPoly addition");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        assert_eq!(self.group, rhs.group, "group mismatch in LaurentPoly subtraction");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        assert_eq!(self.group, rhs.group, "group mismatch in LaurentPoly multiplication");
        // Accumulate on raw coordinate sums and canonicalize once per result term.
        let mut acc: HashMap<Vec<i64>, BigInt> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (v, a) in &self.terms {
            for (w, b) in &rhs.terms {
                let key: Vec<i64> = v.coords().iter().zip(w.coords()).map(|(x, y)| x + y).collect();
                match acc.entry(key) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(a * b);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += a * b,
                }
            }
        }
        let mut out = LaurentPoly::zero(self.group);
        for (k, c) in acc {
            if !c.is_zero() {
                let w = canonicalize(self.group, k).expect("lattice is closed under addition");
                out.add_term(w, c);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { group: self.group, terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.group, rhs.group, "group mismatch in LaurentPoly addition");
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.group, rhs.group, "group mismatch in LaurentPoly subtraction");
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su(n: usize) -> GroupType {
        GroupType::su(n).unwrap()
    }

    fn p(g: GroupType, s: &str) -> LaurentPoly {
        LaurentPoly::parse(g, s).unwrap()
    }

    #[test]
    fn addition() {
        let g = su(3);
        assert_eq!(p(g, "x + y") + p(g, "-y"), p(g, "x"));
        let f = p(g, "x^2y - 3");
        assert_eq!(&f + &LaurentPoly::zero(g), f);
        let s = su(2);
        let w = p(s, "t") + p(s, "1/t");
        assert_eq!(w.to_string(), "t + t^-1");
    }

    #[test]
    fn multiplication() {
        let g = su(3);
        assert_eq!(p(g, "x") * p(g, "y*z"), LaurentPoly::one(g));
        let s = su(2);
        assert_eq!(p(s, "t + 1/t") * p(s, "t"), p(s, "t^2 + 1"));
        let f = p(g, "x^2y - 3 + z");
        assert_eq!(&f * &LaurentPoly::one(g), f);
    }

    #[test]
    fn relation_is_applied() {
        let g = su(4);
        let f = p(g, "x1^3 - 2x2x4 + 5");
        let prod = p(g, "x1x2x3x4");
        assert_eq!(&f * &prod, f);
    }

    #[test]
    fn group_mismatch() {
        let a = LaurentPoly::one(su(3));
        let b = LaurentPoly::one(su(2));
        assert!(matches!(a.checked_add(&b), Err(Error::GroupMismatch { .. })));
        assert!(matches!(a.checked_mul(&b), Err(Error::GroupMismatch { .. })));
    }

    #[test]
    fn formatting() {
        let g = su(3);
        assert_eq!(p(g, "x^2*y - 3").to_string(), "x^2y - 3");
        assert_eq!(p(g, "1/x").to_string(), "yz");
        let so6 = GroupType::so_even(3).unwrap();
        assert_eq!(p(so6, "(x*y*z)^(1/2)").to_string(), "x^(1/2)y^(1/2)z^(1/2)");
        assert_eq!(p(so6, "2/x - z").to_string(), "-z + 2x^-1");
        assert_eq!(LaurentPoly::zero(g).to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let g = su(3);
        let a = p(g, "x^2 - y^2");
        let b = p(g, "x - y");
        assert_eq!(a.div_exact(&b).unwrap(), p(g, "x + y"));
        assert!(p(g, "x^2 + y^2").div_exact(&b).is_err());
        assert!(a.div_exact(&LaurentPoly::zero(g)).is_err());
        // Division that only works modulo xyz = 1.
        let q = p(g, "x*y*z - 1 + x").div_exact(&p(g, "x")).unwrap();
        assert_eq!(q, LaurentPoly::one(g));
        let so4 = GroupType::so_even(2).unwrap();
        let f = p(so4, "(x*y)^(1/2) + 3/x");
        let d = p(so4, "x^(1/2)y^(-1/2) - 2");
        assert_eq!((&f * &d).div_exact(&d).unwrap(), f);
    }

    #[test]
    fn json_form() {
        let g = su(3);
        let j = p(g, "x^2y - 3").to_json();
        assert_eq!(j[0]["weight"], json!([2, 1, 0]));
        assert_eq!(j[0]["coefficient"], json!("1"));
        assert_eq!(j[1]["coefficient"], json!("-3"));
    }

    #[test]
    fn powers() {
        let s = su(2);
        let w = p(s, "t + 1/t");
        assert_eq!(w.pow(2), p(s, "t^2 + 2 + t^-2"));
        assert_eq!(w.pow(0), LaurentPoly::one(s));
    }
}
