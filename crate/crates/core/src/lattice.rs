//! Weight lattices of the supported groups.
//!
//! Two families are modelled:
//!
//! * `SU(n)`, `n >= 2`: weights are exponent vectors of `x_1..x_n` modulo the
//!   all-ones vector (the relation `x_1 x_2 ... x_n = 1`). The canonical
//!   representative has minimum coordinate `0`.
//! * `SO(2n)`, `n = 1, 2, 3`: weights are stored with *doubled* coordinates so
//!   that the spin weight `(x y z)^(1/2)` is the integer vector `(1, 1, 1)`.
//!   A doubled vector is a lattice point iff all coordinates share a parity.
//!   For `SO(2)` only integer weights are admitted, so the stored coordinate
//!   is always even.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Special unitary group `SU(n)`.
    SU,
    /// Even special orthogonal group `SO(2n)`, with spin weights adjoined.
    SOEven,
}

/// A supported compact group together with its rank parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupType {
    family: Family,
    n: usize,
}

impl GroupType {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        match family {
            Family::SU if n >= 2 => Ok(GroupType { family, n }),
            Family::SOEven if (1..=3).contains(&n) => Ok(GroupType { family, n }),
            Family::SU => Err(Error::UnsupportedGroup(format!("SU({n}) needs n >= 2"))),
            Family::SOEven => {
                Err(Error::UnsupportedGroup(format!("SO({}) is outside the supported range SO(2)..SO(6)", 2 * n)))
            }
        }
    }

    pub fn su(n: usize) -> Result<Self> {
        Self::new(Family::SU, n)
    }

    pub fn so_even(n: usize) -> Result<Self> {
        Self::new(Family::SOEven, n)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Number of torus coordinates `x_1..x_n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_su(&self) -> bool {
        self.family == Family::SU
    }

    /// Rank of the character lattice (`n - 1` for `SU(n)`, `n` for `SO(2n)`).
    pub fn lattice_rank(&self) -> usize {
        match self.family {
            Family::SU => self.n - 1,
            Family::SOEven => self.n,
        }
    }

    /// Order of the Weyl group: `n!` or `2^(n-1) n!`.
    pub fn weyl_order(&self) -> usize {
        let fact: usize = (1..=self.n).product();
        match self.family {
            Family::SU => fact,
            Family::SOEven => fact << (self.n - 1),
        }
    }

    pub fn check_same(&self, other: &GroupType) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroupMismatch { left: *self, right: *other })
        }
    }

    /// Variable names used when printing monomials.
    pub fn variable_names(&self) -> Vec<String> {
        match (self.family, self.n) {
            (Family::SU, 2) => vec!["t".into(), "t2".into()],
            (_, n) if n <= 3 => ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect(),
            (_, n) => (1..=n).map(|i| format!("x{i}")).collect(),
        }
    }

    /// Resolves a variable name to a coordinate index.
    pub fn variable_index(&self, name: &str) -> Option<usize> {
        let n = self.n;
        if let Some(idx) = name.strip_prefix('x').filter(|s| !s.is_empty()) {
            if let Ok(i) = idx.parse::<usize>() {
                return (1..=n).contains(&i).then(|| i - 1);
            }
        }
        if self.family == Family::SU && n == 2 {
            return match name {
                "t" | "t1" => Some(0),
                "t2" => Some(1),
                _ => None,
            };
        }
        if n <= 3 {
            return ["x", "y", "z"][..n].iter().position(|v| *v == name);
        }
        None
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::SU => write!(f, "SU({})", self.n),
            Family::SOEven => write!(f, "SO({})", 2 * self.n),
        }
    }
}

/// A point of the character lattice, always held in canonical form.
///
/// Ordering is graded-lexicographic: total coordinate sum first, then
/// lexicographic on coordinates. Weights of different groups never compare
/// equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    group: GroupType,
    coords: Vec<i64>,
}

impl Weight {
    /// Builds a weight from coordinates in storage convention (doubled for
    /// `SO(2n)`) and canonicalizes it.
    pub fn new(group: GroupType, coords: impl Into<Vec<i64>>) -> Result<Self> {
        canonicalize(group, coords.into())
    }

    /// Builds a weight from ordinary integer exponents of `x_1..x_n`.
    pub fn from_exponents(group: GroupType, exps: &[i64]) -> Result<Self> {
        match group.family {
            Family::SU => Self::new(group, exps.to_vec()),
            Family::SOEven => Self::new(group, exps.iter().map(|e| 2 * e).collect::<Vec<_>>()),
        }
    }

    pub fn zero(group: GroupType) -> Self {
        Weight { group, coords: vec![0; group.n] }
    }

    /// The monomial `x_i` (0-based index).
    pub fn unit(group: GroupType, i: usize) -> Self {
        let mut e = vec![0; group.n];
        e[i] = 1;
        Self::from_exponents(group, &e).expect("unit vector is a lattice point")
    }

    /// Caller guarantees the coordinates are already canonical.
    pub(crate) fn from_canonical(group: GroupType, coords: Vec<i64>) -> Self {
        debug_assert_eq!(canonicalize(group, coords.clone()).unwrap().coords, coords);
        Weight { group, coords }
    }

    pub fn group(&self) -> GroupType {
        self.group
    }

    /// Canonical coordinates in storage convention.
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn degree(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// `true` for `SO(2n)` weights with odd (half-integer) coordinates.
    pub fn is_spin(&self) -> bool {
        self.group.family == Family::SOEven && self.coords.iter().any(|c| c % 2 != 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.group, other.group);
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        canonicalize(self.group, coords).expect("lattice is closed under addition")
    }

    pub fn neg(&self) -> Weight {
        let coords = self.coords.iter().map(|a| -a).collect();
        canonicalize(self.group, coords).expect("lattice is closed under negation")
    }

    pub fn scale(&self, k: i64) -> Weight {
        let coords = self.coords.iter().map(|a| a * k).collect();
        canonicalize(self.group, coords).expect("lattice is closed under scaling")
    }

    /// Coordinates with respect to a Z-basis of the lattice, identifying the
    /// lattice with `Z^r` where `r = lattice_rank()`.
    pub fn lattice_coords(&self) -> Vec<i64> {
        let n = self.group.n;
        let c = &self.coords;
        match (self.group.family, n) {
            (Family::SU, _) => (0..n - 1).map(|i| c[i] - c[n - 1]).collect(),
            (Family::SOEven, 1) => vec![c[0] / 2],
            (Family::SOEven, _) => {
                let last = c[n - 1];
                let mut out: Vec<i64> = (0..n - 1).map(|i| (c[i] - last) / 2).collect();
                out.push(last);
                out
            }
        }
    }

    /// Inverse of [`Weight::lattice_coords`].
    pub fn from_lattice_coords(group: GroupType, flat: &[i64]) -> Result<Self> {
        if flat.len() != group.lattice_rank() {
            return Err(Error::Dimension { expected: group.lattice_rank(), got: flat.len() });
        }
        let n = group.n;
        let coords = match (group.family, n) {
            (Family::SU, _) => {
                let mut v = flat.to_vec();
                v.push(0);
                v
            }
            (Family::SOEven, 1) => vec![2 * flat[0]],
            (Family::SOEven, _) => {
                let last = flat[n - 1];
                let mut v: Vec<i64> = flat[..n - 1].iter().map(|c| 2 * c + last).collect();
                v.push(last);
                v
            }
        };
        Self::new(group, coords)
    }

    /// Parses the textual weight syntax, e.g. `(2,1,0)` or `(1/2,-1/2,1/2)`.
    pub fn parse(group: GroupType, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, "weight must be parenthesized"))?;
        let mut coords = Vec::new();
        for part in inner.split(',') {
            let p = part.trim();
            let (num, halved) = match p.strip_suffix("/2") {
                Some(num) => (num.trim(), true),
                None => (p, false),
            };
            let v: i64 = num.parse().map_err(|_| Error::parse(0, format!("bad weight coordinate `{p}`")))?;
            let stored = match (group.family, halved) {
                (Family::SU, false) => v,
                (Family::SU, true) => return Err(Error::Lattice("half-integer coordinate in SU weight".into())),
                (Family::SOEven, false) => 2 * v,
                (Family::SOEven, true) => v,
            };
            coords.push(stored);
        }
        Self::new(group, coords)
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.group
            .cmp(&other.group)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match self.group.family {
                Family::SU => write!(f, "{c}")?,
                Family::SOEven if c % 2 == 0 => write!(f, "{}", c / 2)?,
                Family::SOEven => write!(f, "{c}/2")?,
            }
        }
        write!(f, ")")
    }
}

/// Returns the canonical representative of `coords` in the lattice of `group`.
pub fn canonicalize(group: GroupType, mut coords: Vec<i64>) -> Result<Weight> {
    if coords.len() != group.n {
        return Err(Error::Dimension { expected: group.n, got: coords.len() });
    }
    match group.family {
        Family::SU => {
            let min = *coords.iter().min().expect("n >= 2");
            coords.iter_mut().for_each(|c| *c -= min);
        }
        Family::SOEven => {
            let parity = coords[0].rem_euclid(2);
            if group.n == 1 && parity != 0 {
                return Err(Error::Lattice("SO(2) admits integer weights only".into()));
            }
            if coords.iter().any(|c| c.rem_euclid(2) != parity) {
                return Err(Error::Lattice(format!(
                    "doubled coordinates {coords:?} mix integer and half-integer entries"
                )));
            }
        }
    }
    Ok(Weight { group, coords })
}

/// Roots, fundamental weights and `rho` of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    pub group: GroupType,
    /// Roots as integer combinations of `L_1..L_n` (not doubled).
    pub roots: Vec<Vec<i64>>,
    /// `omega_i = L_1 + ... + L_i` for `SU(n)`; empty for `SO(2n)`.
    pub fundamental_weights: Vec<Weight>,
    /// Sum of the fundamental weights; only set for `SU(n)`.
    pub rho: Option<Weight>,
}

impl RootDatum {
    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        let n = self.group.n;
        (0..n.saturating_sub(1))
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r[i + 1] = -1;
                r
            })
            .collect()
    }
}

pub fn root_datum(group: GroupType) -> RootDatum {
    let n = group.n;
    let mut roots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            match group.family {
                Family::SU => {
                    let mut r = vec![0; n];
                    r[i] = 1;
                    r[j] = -1;
                    roots.push(r);
                }
                Family::SOEven if i < j => {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let mut r = vec![0; n];
                        r[i] = si;
                        r[j] = sj;
                        roots.push(r);
                    }
                }
                Family::SOEven => {}
            }
        }
    }
    let (fundamental_weights, rho) = match group.family {
        Family::SU => {
            let fws: Vec<Weight> = (1..n)
                .map(|i| {
                    let e: Vec<i64> = (0..n).map(|k| i64::from(k < i)).collect();
                    Weight::from_exponents(group, &e).expect("fundamental weight")
                })
                .collect();
            let rho = fws.iter().fold(Weight::zero(group), |acc, w| acc.add(w));
            (fws, Some(rho))
        }
        Family::SOEven => (Vec::new(), None),
    };
    RootDatum { group, roots, fundamental_weights, rho }
}

/// Killing form of `sl_n` on the Cartan subalgebra, `2n * sum(a_i b_i)`, for
/// trace-zero diagonal vectors `a` and `b`.
pub fn killing_form_cartan(a: &[BigRational], b: &[BigRational], n: usize) -> Result<BigRational> {
    if a.len() != n || b.len() != n {
        return Err(Error::Dimension { expected: n, got: if a.len() != n { a.len() } else { b.len() } });
    }
    let trace = |v: &[BigRational]| v.iter().fold(BigRational::zero(), |acc, x| acc + x);
    if !trace(a).is_zero() || !trace(b).is_zero() {
        return Err(Error::Domain("Cartan elements of sl_n must have trace zero".into()));
    }
    let dot = a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y);
    Ok(dot * BigRational::from_integer((2 * n as i64).into()))
}
