//! Weyl groups as explicit finite groups of signed permutations.
//!
//! `SU(n)` has the symmetric group `S_n` acting by permuting coordinates.
//! `SO(2n)` has the even-signed permutations (`(Z/2)^(n-1) ⋊ S_n`). Groups
//! are small (at most 120 elements for the sizes used here) and are
//! enumerated outright.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Family, GroupType, Weight};
use crate::laurent::LaurentPoly;

/// A signed permutation. Acting on a coordinate vector `v` it produces `u`
/// with `u[perm[i]] = flips[perm[i]] * v[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    group: GroupType,
    perm: Vec<usize>,
    flips: Vec<i8>,
}

impl WeylElement {
    pub fn identity(group: GroupType) -> Self {
        WeylElement { group, perm: (0..group.n()).collect(), flips: vec![1; group.n()] }
    }

    /// Builds an element from a permutation (0-based images) and flip vector.
    pub fn new(group: GroupType, perm: Vec<usize>, flips: Vec<i8>) -> Result<Self> {
        let n = group.n();
        if perm.len() != n || flips.len() != n {
            return Err(Error::Dimension { expected: n, got: perm.len().min(flips.len()) });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Domain(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if flips.iter().any(|f| *f != 1 && *f != -1) {
            return Err(Error::Domain("flips must be ±1".into()));
        }
        let negs = flips.iter().filter(|f| **f == -1).count();
        match group.family() {
            Family::SU if negs > 0 => Err(Error::Domain("SU Weyl elements carry no sign changes".into())),
            Family::SOEven if negs % 2 == 1 => {
                Err(Error::Domain("SO(2n) Weyl elements change an even number of signs".into()))
            }
            _ => Ok(WeylElement { group, perm, flips }),
        }
    }

    /// Transposition of coordinates `i` and `j` (0-based).
    pub fn transposition(group: GroupType, i: usize, j: usize) -> Self {
        let mut e = Self::identity(group);
        e.perm.swap(i, j);
        e
    }

    /// Sign change of coordinates `i` and `j` (`SO(2n)` only).
    pub fn double_flip(group: GroupType, i: usize, j: usize) -> Self {
        let mut e = Self::identity(group);
        e.flips[i] = -1;
        e.flips[j] = -1;
        e
    }

    pub fn group(&self) -> GroupType {
        self.group
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flips(&self) -> &[i8] {
        &self.flips
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        debug_assert_eq!(self.group, other.group);
        let n = self.perm.len();
        let perm: Vec<usize> = (0..n).map(|i| self.perm[other.perm[i]]).collect();
        let mut flips = vec![1i8; n];
        for i in 0..n {
            let mid = other.perm[i];
            flips[self.perm[mid]] = self.flips[self.perm[mid]] * other.flips[mid];
        }
        WeylElement { group: self.group, perm, flips }
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut flips = vec![1i8; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            flips[i] = self.flips[self.perm[i]];
        }
        WeylElement { group: self.group, perm, flips }
    }

    /// Applies the element to raw coordinates.
    pub fn act_coords(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            let t = self.perm[i];
            out[t] = i64::from(self.flips[t]) * x;
        }
        out
    }

    pub fn act_weight(&self, w: &Weight) -> Weight {
        debug_assert_eq!(self.group, w.group());
        // Permutations keep the minimum coordinate and sign changes keep the
        // parity, so the image is already canonical.
        Weight::from_canonical(self.group, self.act_coords(w.coords()))
    }

    /// Ring automorphism of `R(T)` induced by the element.
    pub fn act(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.group.check_same(&f.group())?;
        Ok(f.map_weights(|w| self.act_weight(w)))
    }

    /// Determinant of the signed permutation matrix.
    pub fn sign(&self) -> i8 {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut parity = 1i8;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.perm[i];
                len += 1;
            }
            if len % 2 == 0 {
                parity = -parity;
            }
        }
        parity * self.flips.iter().product::<i8>()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.flips.iter().all(|&f| f == 1)
    }
}

impl fmt::Display for WeylElement {
    /// Cycle notation on 1-based indices, e.g. `(1 2 3)`, with the flip vector
    /// appended for `SO(2n)`: `(1 2)[+,-,-]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.perm[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.perm[i];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        if self.group.family() == Family::SOEven {
            let signs: Vec<&str> = self.flips.iter().map(|&s| if s > 0 { "+" } else { "-" }).collect();
            write!(f, "[{}]", signs.join(","))?;
        }
        Ok(())
    }
}

/// All elements of the Weyl group, each exactly once. The identity comes first.
pub fn elements(group: GroupType) -> Vec<WeylElement> {
    let n = group.n();
    let perms = permutations(n);
    let flip_sets: Vec<Vec<i8>> = match group.family() {
        Family::SU => vec![vec![1; n]],
        Family::SOEven => (0u32..1 << n)
            .filter(|mask| mask.count_ones() % 2 == 0)
            .map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
            .collect(),
    };
    let mut out = Vec::with_capacity(perms.len() * flip_sets.len());
    for p in &perms {
        for fl in &flip_sets {
            out.push(WeylElement { group, perm: p.clone(), flips: fl.clone() });
        }
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// A generating set: adjacent transpositions, plus one double sign change for `SO(2n)`.
pub fn generators(group: GroupType) -> Vec<WeylElement> {
    let n = group.n();
    let mut gens: Vec<WeylElement> =
        (0..n.saturating_sub(1)).map(|i| WeylElement::transposition(group, i, i + 1)).collect();
    if group.family() == Family::SOEven && n >= 2 {
        gens.push(WeylElement::double_flip(group, n - 2, n - 1));
    }
    gens
}

/// First generator that moves `f`, if any.
pub fn invariance_violation(f: &LaurentPoly) -> Option<WeylElement> {
    // The action permutes the support, so matching coefficients term by term suffices.
    generators(f.group()).into_iter().find(|g| f.terms().any(|(w, c)| f.coefficient(&g.act_weight(w)) != *c))
}

pub fn is_invariant(f: &LaurentPoly) -> bool {
    invariance_violation(f).is_none()
}

/// The alternating sum `Σ_w sign(w) · w(f)`.
pub fn antisymmetrize(f: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero(f.group());
    for w in elements(f.group()) {
        let s = num_bigint::BigInt::from(w.sign());
        for (v, c) in f.terms() {
            out.add_term(w.act_weight(v), c * &s);
        }
    }
    out
}

/// Result of moving a weight into the closed dominant chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dominant {
    pub weight: Weight,
    /// Sign of the element used; `None` on a wall, where it is not determined.
    pub sign: Option<i8>,
    pub on_wall: bool,
    /// An element mapping the input onto `weight`.
    pub element: WeylElement,
}

/// Moves `w` into the dominant chamber.
///
/// `SU(n)`: coordinates sorted descending; on a wall iff two coincide.
/// `SO(2n)`: `|w_1| >= ... >= |w_(n-1)| >= |w_n|` with only the last entry
/// possibly negative; on a wall iff two absolute values coincide. A single
/// zero is not a wall because the even-flip constraint can always be absorbed
/// by flipping that zero.
pub fn dominant_representative(w: &Weight) -> Dominant {
    let g = w.group();
    let n = g.n();
    let c = w.coords();
    let key = |i: usize| match g.family() {
        Family::SU => c[i],
        Family::SOEven => c[i].abs(),
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key(b).cmp(&key(a)).then(a.cmp(&b)));
    let on_wall = (1..n).any(|k| key(order[k - 1]) == key(order[k]));

    let mut perm = vec![0; n];
    for (pos, &src) in order.iter().enumerate() {
        perm[src] = pos;
    }
    let mut src_flips: Vec<i8> = vec![1; n];
    if g.family() == Family::SOEven {
        for i in 0..n {
            if c[i] < 0 {
                src_flips[i] = -1;
            }
        }
        if src_flips.iter().filter(|f| **f == -1).count() % 2 == 1 {
            let fix = (0..n).find(|&i| c[i] == 0).unwrap_or(order[n - 1]);
            src_flips[fix] = -src_flips[fix];
        }
    }
    let mut flips = vec![1i8; n];
    for i in 0..n {
        flips[perm[i]] = src_flips[i];
    }
    let element = WeylElement { group: g, perm, flips };
    let weight = element.act_weight(w);
    let sign = (!on_wall).then(|| element.sign());
    Dominant { weight, sign, on_wall, element }
}
