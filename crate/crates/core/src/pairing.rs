//! The index pairing `R(T) × R(T) → R(G)` for `SU(n)` and Gram matrices.
//!
//! For monomials `⟨e^a, e^b⟩` depends on `μ = a + b` only: if `μ` lies on a
//! wall the value is 0; otherwise with `w μ = μ⁺` dominant it is
//! `sign(w) · ch(V_(μ⁺ - ρ))`, computed as `J(e^μ⁺) / J(e^ρ)` where `J` is
//! the alternating sum over the Weyl group.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{Family, GroupType, Weight};
use crate::laurent::{weight_label, LaurentPoly};
use crate::symreduce::{self, InvariantPoly};
use crate::weyl;

/// An element of `R(G)` in expanded form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualCharacter {
    value: LaurentPoly,
}

impl VirtualCharacter {
    /// Wraps a Weyl-invariant Laurent polynomial.
    pub fn new(value: LaurentPoly) -> Result<Self> {
        match weyl::invariance_violation(&value) {
            Some(w) => Err(Error::NotInvariant { generator: w.to_string() }),
            None => Ok(VirtualCharacter { value }),
        }
    }

    pub fn zero(g: GroupType) -> Self {
        VirtualCharacter { value: LaurentPoly::zero(g) }
    }

    pub fn value(&self) -> &LaurentPoly {
        &self.value
    }

    pub fn into_value(self) -> LaurentPoly {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        self.value.as_constant()
    }

    pub fn to_invariant(&self) -> Result<InvariantPoly> {
        symreduce::contract(&self.value)
    }

    /// `0`, `+1`, `-1`, or the generator form.
    pub fn label(&self) -> String {
        match self.as_constant() {
            Some(c) if c.is_zero() => "0".into(),
            Some(c) if c.is_positive() => format!("+{c}"),
            Some(c) => c.to_string(),
            None => self.to_invariant().map(|p| p.to_string()).unwrap_or_else(|_| self.value.to_string()),
        }
    }
}

impl fmt::Display for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// `ρ = (n-1, ..., 1, 0)`.
pub fn rho(g: GroupType) -> Result<Weight> {
    require_su(g)?;
    let n = g.n() as i64;
    Weight::new(g, (0..n).map(|i| n - 1 - i).collect::<Vec<_>>())
}

fn require_su(g: GroupType) -> Result<()> {
    match g.family() {
        Family::SU => Ok(()),
        Family::SOEven => {
            Err(Error::UnsupportedGroup(format!("the index pairing is implemented for SU(n) only, not {g}")))
        }
    }
}

/// `ch(V_λ)` for the dominant weight `λ`, by the Weyl character formula.
pub fn irreducible_character(lambda: &Weight) -> Result<LaurentPoly> {
    let g = lambda.group();
    static CACHE: OnceLock<Mutex<HashMap<Weight, LaurentPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(ch) = cache.lock().expect("cache lock").get(lambda) {
        return Ok(ch.clone());
    }
    let r = rho(g)?;
    let shifted = lambda.add(&r);
    let d = weyl::dominant_representative(&shifted);
    if d.on_wall || d.weight != shifted {
        return Err(Error::Domain(format!("{lambda} is not dominant")));
    }
    let num = weyl::antisymmetrize(&LaurentPoly::monomial(shifted));
    let den = weyl::antisymmetrize(&LaurentPoly::monomial(r));
    let ch = num.div_exact(&den).map_err(|e| Error::Internal(format!("Weyl character quotient: {e}")))?;
    cache.lock().expect("cache lock").insert(lambda.clone(), ch.clone());
    Ok(ch)
}

/// `⟨e^m1, e^m2⟩`.
pub fn index_pair(m1: &Weight, m2: &Weight, g: GroupType) -> Result<VirtualCharacter> {
    require_su(g)?;
    g.check_same(&m1.group())?;
    g.check_same(&m2.group())?;
    pair_sum(&m1.add(m2))
}

/// The pairing value for a monomial product `e^μ`.
fn pair_sum(mu: &Weight) -> Result<VirtualCharacter> {
    let g = mu.group();
    let d = weyl::dominant_representative(mu);
    let Some(sign) = d.sign else {
        return Ok(VirtualCharacter::zero(g));
    };
    let r = rho(g)?;
    let lambda_coords: Vec<i64> = d.weight.coords().iter().zip(r.coords()).map(|(a, b)| a - b).collect();
    let lambda = Weight::new(g, lambda_coords)?;
    let ch = if lambda.is_zero() { LaurentPoly::one(g) } else { irreducible_character(&lambda)? };
    Ok(VirtualCharacter { value: ch.scale(&BigInt::from(sign)) })
}

/// Bilinear extension of [`index_pair`] to polynomials.
pub fn pair(f: &LaurentPoly, h: &LaurentPoly) -> Result<VirtualCharacter> {
    let g = f.group();
    require_su(g)?;
    g.check_same(&h.group())?;
    let mut out = LaurentPoly::zero(g);
    for (a, ca) in f.terms() {
        for (b, cb) in h.terms() {
            let v = pair_sum(&a.add(b))?;
            out += &v.value.scale(&(ca * cb));
        }
    }
    Ok(VirtualCharacter { value: out })
}

/// Pairing values `entries[i][j] = ⟨basis[i], basis[j]⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    group: GroupType,
    basis: Vec<Weight>,
    entries: Vec<Vec<VirtualCharacter>>,
}

pub fn gram_matrix(basis: &[Weight], g: GroupType) -> Result<GramMatrix> {
    require_su(g)?;
    if basis.is_empty() {
        return Err(Error::Rank { expected: 1, got: 0 });
    }
    for w in basis {
        g.check_same(&w.group())?;
    }
    let sums: BTreeSet<Weight> = basis.iter().flat_map(|a| basis.iter().map(move |b| a.add(b))).collect();
    let values: HashMap<Weight, VirtualCharacter> =
        sums.into_par_iter().map(|mu| pair_sum(&mu).map(|v| (mu, v))).collect::<Result<_>>()?;
    let entries = basis.iter().map(|a| basis.iter().map(|b| values[&a.add(b)].clone()).collect()).collect();
    Ok(GramMatrix { group: g, basis: basis.to_vec(), entries })
}

impl GramMatrix {
    pub fn group(&self) -> GroupType {
        self.group
    }

    pub fn basis(&self) -> &[Weight] {
        &self.basis
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &VirtualCharacter {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<VirtualCharacter>] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size()).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Aligned text table with basis labels on both axes.
    pub fn to_table(&self) -> String {
        let labels: Vec<String> = self.basis.iter().map(weight_label).collect();
        let cells: Vec<Vec<String>> = self.entries.iter().map(|row| row.iter().map(|v| v.label()).collect()).collect();
        let mut width = labels.iter().map(|l| l.len()).max().unwrap_or(1);
        for row in &cells {
            for c in row {
                width = width.max(c.chars().count());
            }
        }
        let pad = |s: &str| format!("{s:>width$}");
        let mut out = String::new();
        out.push_str(&pad(""));
        for l in &labels {
            out.push_str("  ");
            out.push_str(&pad(l));
        }
        out.push('\n');
        for (l, row) in labels.iter().zip(&cells) {
            out.push_str(&pad(l));
            for c in row {
                out.push_str("  ");
                out.push_str(&pad(c));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group.to_string(),
            "basis": self.basis.iter().map(weight_label).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(|row| row.iter().map(|v| v.label()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Exact determinant over the Laurent ring and whether it is `±1`.
pub fn unimodular_check(gm: &GramMatrix) -> Result<(LaurentPoly, bool)> {
    let m: Vec<Vec<LaurentPoly>> = gm.entries.iter().map(|row| row.iter().map(|v| v.value.clone()).collect()).collect();
    let det = determinant(gm.group, m)?;
    let unit = det.as_constant().is_some_and(|c| c.abs().is_one());
    Ok((det, unit))
}

/// Determinant of a square matrix over `Z[Λ]`.
///
/// Eliminates on unit pivots (`±` monomials) while any remain, which keeps
/// entries small, then finishes with fraction-free Bareiss elimination.
pub fn determinant(g: GroupType, mut a: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension { expected: n, got: a.iter().map(|r| r.len()).find(|&l| l != n).unwrap_or(n) });
    }
    let mut det = LaurentPoly::one(g);
    while !a.is_empty() {
        let pivot = (0..a.len()).find_map(|r| {
            (0..a.len()).find(|&c| a[r][c].as_monomial().is_some_and(|(_, k)| k.abs().is_one())).map(|c| (r, c))
        });
        let Some((r, c)) = pivot else {
            return Ok(&det * &bareiss(a)?);
        };
        if r != 0 {
            a.swap(0, r);
            det = -det;
        }
        if c != 0 {
            a.iter_mut().for_each(|row| row.swap(0, c));
            det = -det;
        }
        let p = a[0][0].clone();
        let pinv = p.unit_inverse().expect("unit pivot");
        det = &det * &p;
        let top = a.remove(0);
        for row in a.iter_mut() {
            let lead = row.remove(0);
            if lead.is_zero() {
                continue;
            }
            let f = &lead * &pinv;
            for (x, t) in row.iter_mut().zip(&top[1..]) {
                if !t.is_zero() {
                    *x -= &(&f * t);
                }
            }
        }
    }
    Ok(det)
}

fn bareiss(mut a: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly> {
    let n = a.len();
    let g = a[0][0].group();
    let mut sign = 1;
    let mut prev = LaurentPoly::one(g);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(LaurentPoly::zero(g));
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev).map_err(|e| Error::Internal(format!("Bareiss step: {e}")))?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { -d } else { d })
}

/// Certifies that `basis` (of size `|W|`) is an `R(G)`-basis of `R(T)` by
/// checking that its Gram matrix is unimodular.
pub fn rank_certificate(basis: &[Weight], g: GroupType) -> Result<bool> {
    if basis.len() != g.weyl_order() {
        return Err(Error::Rank { expected: g.weyl_order(), got: basis.len() });
    }
    let gm = gram_matrix(basis, g)?;
    Ok(unimodular_check(&gm)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freebasis::standard_basis;

    fn su(n: usize) -> GroupType {
        GroupType::su(n).unwrap()
    }

    fn w(g: GroupType, c: &[i64]) -> Weight {
        Weight::new(g, c.to_vec()).unwrap()
    }

    fn p(g: GroupType, s: &str) -> LaurentPoly {
        LaurentPoly::parse(g, s).unwrap()
    }

    #[test]
    fn branch_examples() {
        let g = su(3);
        let one = Weight::zero(g);
        assert_eq!(index_pair(&one, &w(g, &[2, 1, 0]), g).unwrap().as_constant(), Some(1.into()));
        assert_eq!(index_pair(&w(g, &[0, 1, 0]), &w(g, &[1, 1, 0]), g).unwrap().as_constant(), Some((-1).into()));
        assert!(index_pair(&w(g, &[1, 0, 0]), &w(g, &[1, 0, 0]), g).unwrap().is_zero());
        let v = index_pair(&w(g, &[1, 0, 0]), &w(g, &[2, 1, 0]), g).unwrap();
        assert_eq!(v.value(), &p(g, "x + y + z"));
        assert_eq!(v.label(), "e1");
    }

    #[test]
    fn su2_unit_pairing() {
        let g = su(2);
        let gm = gram_matrix(&[Weight::zero(g)], g).unwrap();
        assert!(gm.entry(0, 0).is_zero());
    }

    #[test]
    fn characters() {
        let g = su(3);
        assert_eq!(irreducible_character(&w(g, &[1, 1, 0])).unwrap(), p(g, "x*y + y*z + z*x"));
        assert_eq!(irreducible_character(&w(g, &[2, 0, 0])).unwrap().len(), 6);
        assert!(irreducible_character(&w(g, &[0, 1, 0])).is_err());
        assert!(matches!(rho(GroupType::so_even(2).unwrap()), Err(Error::UnsupportedGroup(_))));
    }

    #[test]
    fn small_determinants() {
        let g = su(2);
        let one = LaurentPoly::one(g);
        let zero = LaurentPoly::zero(g);
        assert_eq!(determinant(g, vec![vec![one.clone()]]).unwrap(), one);
        let swap = vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]];
        assert_eq!(determinant(g, swap).unwrap(), -&one);
        // No unit entries: Bareiss path.
        let a = p(g, "t + 1/t");
        let two = LaurentPoly::constant(g, 2);
        let m = vec![vec![a.clone(), two.clone()], vec![two.clone(), a.clone()]];
        assert_eq!(determinant(g, m).unwrap(), &(&a * &a) - &LaurentPoly::constant(g, 4));
        let m = vec![vec![a.clone(), a.clone()], vec![a.clone(), a.clone()]];
        assert!(determinant(g, m).unwrap().is_zero());
    }

    #[test]
    fn su3_standard_gram() {
        let g = su(3);
        let ctx = standard_basis(g);
        let gm = gram_matrix(ctx.basis(), g).unwrap();
        assert!(gm.is_symmetric());
        let (det, unit) = unimodular_check(&gm).unwrap();
        assert!(unit, "det = {det}");
        assert!(rank_certificate(ctx.basis(), g).unwrap());
        assert!(!rank_certificate(&vec![Weight::zero(g); 6], g).unwrap());
        assert!(matches!(rank_certificate(&ctx.basis()[..3], g), Err(Error::Rank { .. })));
    }

    #[test]
    fn bilinear_extension() {
        let g = su(3);
        let e1 = p(g, "x + y + z");
        let m1 = p(g, "y");
        let m2 = p(g, "x*y");
        let lhs = pair(&(&e1 * &m1), &m2).unwrap();
        let rhs = &e1 * pair(&m1, &m2).unwrap().value();
        assert_eq!(lhs.value(), &rhs);
    }
}
