//! The representation ring `R(G)` as a polynomial ring in fundamental
//! generators, with conversion to and from Weyl-invariant Laurent polynomials.
//!
//! Generators per group:
//!
//! | group   | generators                      |
//! |---------|---------------------------------|
//! | `SU(n)` | `e1..e{n-1}` (elementary classes, `en = 1`) |
//! | `SO(2)` | `x` (the Weyl group is trivial, so `x^-1` is allowed) |
//! | `SO(4)` | `wx = x' + 1/x'`, `wy = y' + 1/y'` with `x' = (xy)^(1/2)`, `y' = (x/y)^(1/2)` |
//! | `SO(6)` | `std`, `spin+`, `spin-`         |

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{Family, GroupType, Weight};
use crate::laurent::{substitute, LaurentPoly};
use crate::weyl;

/// An element of `R(G)` written as a polynomial in the fundamental generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantPoly {
    group: GroupType,
    /// Exponent vector over the generators. Negative entries occur only for `SO(2)`.
    terms: BTreeMap<Vec<i64>, BigInt>,
}

/// Number of fundamental generators of `R(G)`.
pub fn generator_count(g: GroupType) -> usize {
    match g.family() {
        Family::SU => g.n() - 1,
        Family::SOEven => g.n(),
    }
}

pub fn generator_names(g: GroupType) -> Vec<String> {
    match (g.family(), g.n()) {
        (Family::SU, n) => (1..n).map(|i| format!("e{i}")).collect(),
        (Family::SOEven, 1) => vec!["x".into()],
        (Family::SOEven, 2) => vec!["wx".into(), "wy".into()],
        (Family::SOEven, _) => vec!["std".into(), "spin+".into(), "spin-".into()],
    }
}

/// Laurent expansion of generator `i`.
pub fn generator_expansion(g: GroupType, i: usize) -> LaurentPoly {
    let n = g.n();
    let w = |c: Vec<i64>| Weight::new(g, c).expect("generator weights are lattice points");
    let sum = |ws: Vec<Vec<i64>>| {
        LaurentPoly::from_terms(g, ws.into_iter().map(|c| (w(c), BigInt::one()))).expect("same group")
    };
    match (g.family(), n) {
        (Family::SU, _) => {
            let k = i + 1;
            let subsets = (0u32..1 << n).filter(|m| m.count_ones() as usize == k);
            sum(subsets.map(|m| (0..n).map(|j| i64::from(m >> j & 1 == 1)).collect()).collect())
        }
        (Family::SOEven, 1) => sum(vec![vec![2]]),
        (Family::SOEven, 2) => {
            let v = if i == 0 { [1, 1] } else { [1, -1] };
            sum(vec![v.to_vec(), vec![-v[0], -v[1]]])
        }
        (Family::SOEven, _) => match i {
            0 => sum((0..3)
                .flat_map(|j| [2, -2].map(|s| (0..3).map(|t| if t == j { s } else { 0 }).collect()))
                .collect()),
            _ => {
                let parity = if i == 1 { 1 } else { -1 };
                let mut ws = Vec::new();
                for mask in 0u32..8 {
                    let v: Vec<i64> = (0..3).map(|t| if mask >> t & 1 == 1 { -1 } else { 1 }).collect();
                    if v.iter().product::<i64>() == parity {
                        ws.push(v);
                    }
                }
                sum(ws)
            }
        },
    }
}

impl InvariantPoly {
    pub fn zero(group: GroupType) -> Self {
        InvariantPoly { group, terms: BTreeMap::new() }
    }

    pub fn one(group: GroupType) -> Self {
        Self::constant(group, 1)
    }

    pub fn constant(group: GroupType, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(group);
        p.add_term(vec![0; generator_count(group)], c.into());
        p
    }

    /// Generator `i` (0-based).
    pub fn generator(group: GroupType, i: usize) -> Self {
        let mut e = vec![0; generator_count(group)];
        e[i] = 1;
        let mut p = Self::zero(group);
        p.add_term(e, BigInt::one());
        p
    }

    pub fn from_terms(group: GroupType, terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Result<Self> {
        let k = generator_count(group);
        let mut p = Self::zero(group);
        for (e, c) in terms {
            if e.len() != k {
                return Err(Error::Dimension { expected: k, got: e.len() });
            }
            if e.iter().any(|&x| x < 0) && !(group.family() == Family::SOEven && group.n() == 1) {
                return Err(Error::Domain(format!("negative generator exponent in {group}")));
            }
            p.add_term(e, c);
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.iter().next().filter(|(e, _)| e.iter().all(|&x| x == 0)).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.group.check_same(&other.group)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.group.check_same(&other.group)?;
        let mut out = Self::zero(self.group);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.group);
        if !c.is_zero() {
            for (e, x) in &self.terms {
                out.terms.insert(e.clone(), x * c);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.group);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `images[i]` for generator `i`; images may live in another group.
    pub fn compose(&self, images: &[InvariantPoly]) -> Result<InvariantPoly> {
        let k = generator_count(self.group);
        if images.len() != k {
            return Err(Error::Dimension { expected: k, got: images.len() });
        }
        let target = images.first().map_or(self.group, |p| p.group);
        let mut out = InvariantPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = InvariantPoly::constant(target, c.clone());
            for (img, &x) in images.iter().zip(e) {
                if x < 0 {
                    return Err(Error::Domain("negative exponent in generator substitution".into()));
                }
                t = t.checked_mul(&img.pow(x as u32))?;
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    /// The Weyl-invariant Laurent polynomial this element stands for.
    pub fn expand(&self) -> LaurentPoly {
        let g = self.group;
        let constants: Vec<LaurentPoly> = self.terms.values().map(|c| LaurentPoly::constant(g, c.clone())).collect();
        let leaves: Vec<(&[i64], &LaurentPoly)> = self.terms.keys().map(|e| e.as_slice()).zip(&constants).collect();
        evaluate(g, &leaves)
    }

    /// Total degree in the generators, used for ordering output.
    fn degree(e: &[i64]) -> i64 {
        e.iter().sum()
    }

    pub fn to_json(&self) -> Value {
        let names = generator_names(self.group);
        let terms: Vec<Value> = self
            .display_order()
            .into_iter()
            .map(|(e, c)| {
                let exps: serde_json::Map<String, Value> =
                    names.iter().zip(e).filter(|(_, &x)| x != 0).map(|(n, &x)| (n.clone(), json!(x))).collect();
                json!({ "exponents": exps, "coefficient": c.to_string() })
            })
            .collect();
        json!({ "text": self.to_string(), "terms": terms })
    }

    fn display_order(&self) -> Vec<(&Vec<i64>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| Self::degree(b.0).cmp(&Self::degree(a.0)).then_with(|| b.0.cmp(a.0)));
        v
    }
}

impl fmt::Display for InvariantPoly {
    /// Generator form, e.g. `e1^2 - 2*e2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = generator_names(self.group);
        for (idx, (e, c)) in self.display_order().into_iter().enumerate() {
            let mono: Vec<String> = names
                .iter()
                .zip(e)
                .filter(|(_, &x)| x != 0)
                .map(|(n, &x)| {
                    if x == 1 {
                        n.clone()
                    } else if x < 0 {
                        format!("{n}^({x})")
                    } else {
                        format!("{n}^{x}")
                    }
                })
                .collect();
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl Neg for &InvariantPoly {
    type Output = InvariantPoly;
    fn neg(self) -> InvariantPoly {
        self.scale(&BigInt::from(-1))
    }
}

macro_rules! ref_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&InvariantPoly> for &InvariantPoly {
            type Output = InvariantPoly;
            /// Panics when the groups differ.
            fn $m(self, rhs: &InvariantPoly) -> InvariantPoly {
                self.$checked(rhs).expect("group mismatch")
            }
        }
        impl $tr<InvariantPoly> for InvariantPoly {
            type Output = InvariantPoly;
            fn $m(self, rhs: InvariantPoly) -> InvariantPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
ref_op!(Add, add, checked_add);
ref_op!(Sub, sub, checked_sub);
ref_op!(Mul, mul, checked_mul);

/// Evaluates `Σ e^E · leaf_E` with each generator replaced by its
/// expansion, by nested Horner schemes so that only multiplications by
/// single generators occur.
pub(crate) fn evaluate(g: GroupType, leaves: &[(&[i64], &LaurentPoly)]) -> LaurentPoly {
    let gens: Vec<LaurentPoly> = (0..generator_count(g)).map(|i| generator_expansion(g, i)).collect();
    horner(g, &gens, leaves, 0)
}

fn horner(g: GroupType, gens: &[LaurentPoly], terms: &[(&[i64], &LaurentPoly)], i: usize) -> LaurentPoly {
    if i == gens.len() {
        let mut acc = LaurentPoly::zero(g);
        for (_, x) in terms {
            acc += *x;
        }
        return acc;
    }
    let mut groups: BTreeMap<i64, Vec<(&[i64], &LaurentPoly)>> = BTreeMap::new();
    for t in terms {
        groups.entry(t.0[i]).or_default().push(*t);
    }
    let step = |p: LaurentPoly, k: i64| -> LaurentPoly {
        let mut p = p;
        if k >= 0 {
            for _ in 0..k {
                p = &p * &gens[i];
            }
        } else {
            let inv = gens[i].unit_inverse().expect("only SO(2) has negative exponents");
            for _ in 0..-k {
                p = &p * &inv;
            }
        }
        p
    };
    let mut acc = LaurentPoly::zero(g);
    let mut prev: Option<i64> = None;
    for (&k, group) in groups.iter().rev() {
        if let Some(pk) = prev {
            acc = step(acc, pk - k);
        }
        acc += &horner(g, gens, group, i + 1);
        prev = Some(k);
    }
    step(acc, prev.unwrap_or(0))
}

/// Rewrites a Weyl-invariant Laurent polynomial in the generators.
pub fn contract(f: &LaurentPoly) -> Result<InvariantPoly> {
    if let Some(w) = weyl::invariance_violation(f) {
        return Err(Error::NotInvariant { generator: w.to_string() });
    }
    let g = f.group();
    match (g.family(), g.n()) {
        (Family::SU, _) => contract_su(f),
        (Family::SOEven, 1) => Ok(InvariantPoly {
            group: g,
            terms: f.terms().map(|(w, c)| (vec![w.coords()[0] / 2], c.clone())).collect(),
        }),
        (Family::SOEven, 2) => contract_so4(f),
        (Family::SOEven, _) => contract_so6(f),
    }
}

/// Leading-term algorithm. Canonical coordinates already have minimum 0,
/// which is the same as clearing negative exponents with `(x1...xn)^k = 1`.
fn contract_su(f: &LaurentPoly) -> Result<InvariantPoly> {
    let g = f.group();
    let n = g.n();
    let gens: Vec<LaurentPoly> = (0..n - 1).map(|i| generator_expansion(g, i)).collect();
    let mut powers: HashMap<(usize, i64), LaurentPoly> = HashMap::new();
    let mut work = f.clone();
    let mut out = InvariantPoly::zero(g);
    let mut last: Option<Weight> = None;
    while let Some((lead, c)) = work.leading_term() {
        let lead = lead.clone();
        let c = c.clone();
        if let Some(prev) = &last {
            if lead >= *prev {
                return Err(Error::Internal(format!("leading weight {lead} did not decrease below {prev}")));
            }
        }
        let l = lead.coords();
        if (1..n).any(|i| l[i - 1] < l[i]) {
            return Err(Error::Internal(format!("leading weight {lead} of an invariant is not dominant")));
        }
        let e: Vec<i64> = (0..n - 1).map(|i| l[i] - l[i + 1]).collect();
        let mut t = LaurentPoly::constant(g, c.clone());
        for (i, &x) in e.iter().enumerate() {
            if x > 0 {
                let p = powers.entry((i, x)).or_insert_with(|| gens[i].pow(x as u32));
                t = &t * &*p;
            }
        }
        work -= &t;
        out.add_term(e, c);
        last = Some(lead);
    }
    Ok(out)
}

/// Splits an `SO(4)` weight into its `(x', y')` exponents.
pub(crate) fn so4_split(w: &Weight) -> (i64, i64) {
    let c = w.coords();
    ((c[0] + c[1]) / 2, (c[0] - c[1]) / 2)
}

pub(crate) fn so4_join(g: GroupType, p: i64, q: i64) -> Weight {
    Weight::new(g, vec![p + q, p - q]).expect("every (p, q) is a lattice point")
}

/// Invariants of `Z[x'^±, y'^±]` under independent inversions of `x'` and
/// `y'`: repeatedly strip the lex-leading term `x'^p y'^q` with `wx^p wy^q`.
fn contract_so4(f: &LaurentPoly) -> Result<InvariantPoly> {
    let g = f.group();
    let mut work: BTreeMap<(i64, i64), BigInt> = f.terms().map(|(w, c)| (so4_split(w), c.clone())).collect();
    let mut out = InvariantPoly::zero(g);
    let mut last: Option<(i64, i64)> = None;
    while let Some((&(p, q), c)) = work.last_key_value() {
        let c = c.clone();
        if p < 0 || q < 0 || last.is_some_and(|l| (p, q) >= l) {
            return Err(Error::Internal(format!("bad leading exponent ({p}, {q}) in SO(4) reduction")));
        }
        let (bp, bq) = (binomial_row(p), binomial_row(q));
        for (i, a) in bp.iter().enumerate() {
            for (j, b) in bq.iter().enumerate() {
                let key = (p - 2 * i as i64, q - 2 * j as i64);
                let v = work.entry(key).or_insert_with(BigInt::zero);
                *v -= &c * a * b;
                if v.is_zero() {
                    work.remove(&key);
                }
            }
        }
        out.add_term(vec![p, q], c);
        last = Some((p, q));
    }
    Ok(out)
}

/// `C(k, 0..=k)`: coefficients of `(t + 1/t)^k` on `t^k, t^(k-2), ...`.
fn binomial_row(k: i64) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 0..k {
        let next = row.last().unwrap() * (k - i) / (i + 1);
        row.push(next);
    }
    row
}

/// `SU(4)` generator `e_k` written in the `SO(6)` generators, derived from
/// the change of variables. Computed once.
pub fn so6_dictionary() -> &'static [InvariantPoly] {
    static DICT: OnceLock<Vec<InvariantPoly>> = OnceLock::new();
    DICT.get_or_init(|| {
        let so6 = GroupType::so_even(3).expect("SO(6)");
        let to_su4 = &crate::freebasis::so6_change_of_variables().to_su4;
        // Each SO(6) generator becomes an SU(4) invariant; the change of
        // variables permutes the generators, which is inverted here.
        let mut dict: Vec<Option<InvariantPoly>> = vec![None; 3];
        for i in 0..3 {
            let image = substitute(&generator_expansion(so6, i), to_su4).expect("SO(6) source");
            let p = contract_su(&image).expect("generator images are invariant");
            let (e, c) = p.terms().next().expect("non-zero image");
            assert!(
                p.len() == 1 && c.is_one() && e.iter().sum::<i64>() == 1,
                "SO(6) generators map to SU(4) generators"
            );
            let k = e.iter().position(|&x| x == 1).unwrap();
            dict[k] = Some(InvariantPoly::generator(so6, i));
        }
        dict.into_iter().map(|p| p.expect("generator correspondence is a bijection")).collect()
    })
}

fn contract_so6(f: &LaurentPoly) -> Result<InvariantPoly> {
    let to_su4 = &crate::freebasis::so6_change_of_variables().to_su4;
    let image = substitute(f, to_su4)?;
    contract_su(&image)?.compose(so6_dictionary())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su(n: usize) -> GroupType {
        GroupType::su(n).unwrap()
    }

    fn so(n: usize) -> GroupType {
        GroupType::so_even(n).unwrap()
    }

    fn p(g: GroupType, s: &str) -> LaurentPoly {
        LaurentPoly::parse(g, s).unwrap()
    }

    fn gen(g: GroupType, i: usize) -> InvariantPoly {
        InvariantPoly::generator(g, i)
    }

    #[test]
    fn generator_expansions() {
        assert_eq!(generator_expansion(su(3), 0), p(su(3), "x + y + z"));
        assert_eq!(generator_expansion(su(3), 1), p(su(3), "x*y + y*z + z*x"));
        assert_eq!(generator_expansion(su(2), 0), p(su(2), "t + 1/t"));
        assert_eq!(
            generator_expansion(so(3), 1),
            p(so(3), "(x*y*z)^(1/2) + (x/(y*z))^(1/2) + (z/(x*y))^(1/2) + (y/(x*z))^(1/2)")
        );
        assert_eq!(generator_expansion(so(3), 0), p(so(3), "x + y + z + 1/x + 1/y + 1/z"));
        for g in [su(2), su(3), su(4), so(1), so(2), so(3)] {
            for i in 0..generator_count(g) {
                assert!(weyl::is_invariant(&generator_expansion(g, i)));
            }
        }
    }

    #[test]
    fn contract_examples() {
        assert_eq!(contract(&p(su(3), "x + y + z")).unwrap(), gen(su(3), 0));
        let e1 = gen(su(3), 0);
        let e2 = gen(su(3), 1);
        let want = &e1.pow(2) - &e2.scale(&BigInt::from(2));
        let got = contract(&p(su(3), "x^2 + y^2 + z^2")).unwrap();
        assert_eq!(got, want);
        assert_eq!(got.to_string(), "e1^2 - 2*e2");
        let t = contract(&p(su(2), "t^2 + t^-2")).unwrap();
        assert_eq!(t.to_string(), "e1^2 - 2");
    }

    #[test]
    fn contract_rejects_non_invariants() {
        match contract(&p(su(3), "x")) {
            Err(Error::NotInvariant { generator }) => assert_eq!(generator, "(1 2)"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(contract(&p(so(2), "x")).is_err());
        assert!(contract(&p(so(3), "(x*y*z)^(1/2)")).is_err());
    }

    #[test]
    fn so_generators_round_trip() {
        for g in [so(1), so(2), so(3)] {
            for i in 0..generator_count(g) {
                assert_eq!(contract(&generator_expansion(g, i)).unwrap(), gen(g, i), "{g} generator {i}");
            }
        }
        let x = contract(&p(so(1), "x^-3 + 2")).unwrap();
        assert_eq!(x.expand(), p(so(1), "x^-3 + 2"));
        assert_eq!(x.to_string(), "2 + x^(-3)");
    }

    #[test]
    fn dictionary_matches_spin_identification() {
        let d = so6_dictionary();
        let names: Vec<String> = d.iter().map(|q| q.to_string()).collect();
        assert_eq!(names, vec!["spin+", "std", "spin-"]);
    }

    #[test]
    fn products_round_trip() {
        let g = so(3);
        let q = &(&gen(g, 0) * &gen(g, 1)) - &gen(g, 2).pow(3);
        assert_eq!(contract(&q.expand()).unwrap(), q);
        let g = so(2);
        let q = &gen(g, 0).pow(3) + &(&gen(g, 0) * &gen(g, 1).pow(2)).scale(&BigInt::from(-4));
        assert_eq!(contract(&q.expand()).unwrap(), q);
    }

    #[test]
    fn display_forms() {
        let g = su(4);
        let q = &(&gen(g, 0) * &gen(g, 2)).scale(&BigInt::from(3)) - &InvariantPoly::one(g);
        assert_eq!(q.to_string(), "3*e1*e3 - 1");
        assert_eq!((-&gen(g, 1)).to_string(), "-e2");
        assert_eq!(InvariantPoly::zero(g).to_string(), "0");
        assert_eq!(q.to_json()["text"], "3*e1*e3 - 1");
    }
}
