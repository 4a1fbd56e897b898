//! Free bases of `R(T)` over `R(G)` and unique decomposition in them.
//!
//! `SU(n)` uses the tower `A ⊂ A[x1] ⊂ A[x1,x2] ⊂ ...` with `A = R(SU(n))`:
//! `x_(k+1)` is a root of the monic `Q_k(s) = P(s) / ((s-x1)...(s-xk))`
//! of degree `n-k`, where `P(s) = Π (s - x_i)` has coefficients `±e_j`.
//! Reducing each variable modulo its `Q` leaves exponents
//! `0 <= a_i <= n-i`, the standard monomial basis of size `n!`.
//!
//! Working polynomials live in `Z[e][x1^±..x_(n-1)^±]`, i.e. the lattice
//! coordinates with `x_n` eliminated. Since the constant term of `Q_k` is
//! the unit `±(x1...xk)^-1`, negative powers are reduced by the same
//! relation run upwards.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{Family, GroupType, Weight};
use crate::laurent::{substitute, weight_label, LaurentPoly, MonomialMap};
use crate::symreduce::{self, so4_join, so4_split, InvariantPoly};
use crate::weyl;

/// How a context decomposes elements.
#[derive(Debug, Clone)]
enum Strategy {
    Tower(Tower),
    /// `SO(2)`: `R(T) = R(G)`.
    Trivial,
    /// `SO(4)`: tensor square of the rank-one case in `x'`, `y'`.
    ProductRankOne,
    /// `SO(6)`: transport to `SU(4)` and back.
    ViaSu4(Box<BasisContext>),
}

/// A basis of `R(T)` over `R(G)` together with what is needed to decompose in it.
#[derive(Debug, Clone)]
pub struct BasisContext {
    group: GroupType,
    basis: Vec<Weight>,
    index: HashMap<Weight, usize>,
    strategy: Strategy,
}

/// Sort key for basis monomials given by exponent tuples: largest exponent,
/// then total degree, then lex descending. For `SU(3)` this gives
/// `1, x, y, xy, x^2, x^2y`.
fn basis_order(a: &[i64]) -> (i64, i64, std::cmp::Reverse<Vec<i64>>) {
    (a.iter().copied().max().unwrap_or(0), a.iter().sum(), std::cmp::Reverse(a.to_vec()))
}

fn exponent_box(bounds: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &b in bounds {
        out = out.into_iter().flat_map(|v| (0..=b).map(move |a| [v.clone(), vec![a]].concat())).collect();
    }
    out.sort_by_key(|a| basis_order(a));
    out
}

/// The standard basis of `R(T)` over `R(G)`.
pub fn standard_basis(g: GroupType) -> BasisContext {
    static CACHE: OnceLock<std::sync::Mutex<HashMap<GroupType, BasisContext>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(ctx) = cache.lock().expect("cache lock").get(&g) {
        return ctx.clone();
    }
    let ctx = build_context(g);
    cache.lock().expect("cache lock").insert(g, ctx.clone());
    ctx
}

fn build_context(g: GroupType) -> BasisContext {
    let n = g.n();
    let (basis, strategy) = match (g.family(), n) {
        (Family::SU, _) => {
            let bounds: Vec<i64> = (0..n - 1).map(|i| (n - 1 - i) as i64).collect();
            let basis =
                exponent_box(&bounds).iter().map(|a| Weight::from_lattice_coords(g, a).expect("box point")).collect();
            (basis, Strategy::Tower(Tower::new(g)))
        }
        (Family::SOEven, 1) => (vec![Weight::zero(g)], Strategy::Trivial),
        (Family::SOEven, 2) => {
            let basis = exponent_box(&[1, 1]).iter().map(|a| so4_join(g, a[0], a[1])).collect();
            (basis, Strategy::ProductRankOne)
        }
        (Family::SOEven, _) => {
            let su4 = standard_basis(GroupType::su(4).expect("SU(4)"));
            let maps = so6_change_of_variables();
            let basis = su4.basis.iter().map(|w| maps.to_so6.apply_weight(w).expect("SU(4) weight")).collect();
            (basis, Strategy::ViaSu4(Box::new(su4)))
        }
    };
    let index = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    BasisContext { group: g, basis, index, strategy }
}

impl BasisContext {
    pub fn group(&self) -> GroupType {
        self.group
    }

    pub fn basis(&self) -> &[Weight] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn position(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// The minimal polynomials `Q_0..Q_(n-2)` for `SU(n)`: entry `k` holds the
    /// coefficients of `Q_k` (leading 1 first) expanded in `R(T)`.
    pub fn tower(&self) -> Option<Vec<Vec<LaurentPoly>>> {
        match &self.strategy {
            Strategy::Tower(t) => Some(t.expanded_coefficients()),
            _ => None,
        }
    }

    /// Basis labels as printed by the CLI.
    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(weight_label).collect()
    }

    /// The unique `R(G)`-coefficients of `f` in this basis.
    pub fn decompose(&self, f: &LaurentPoly) -> Result<Decomposition> {
        if f.group() != self.group {
            return Err(Error::Context(format!("element of {} given to a {} basis", f.group(), self.group)));
        }
        let g = self.group;
        let coeffs = match &self.strategy {
            Strategy::Tower(t) => t.decompose(f, self)?,
            Strategy::Trivial => vec![symreduce::contract(f)?],
            Strategy::ProductRankOne => decompose_so4(f, self)?,
            Strategy::ViaSu4(su4) => {
                let maps = so6_change_of_variables();
                let inner = su4.decompose(&substitute(f, &maps.to_su4)?)?;
                let dict = symreduce::so6_dictionary();
                inner.coeffs.iter().map(|c| c.compose(dict)).collect::<Result<Vec<_>>>()?
            }
        };
        debug_assert!(coeffs.iter().all(|c| c.group() == g));
        Ok(Decomposition { group: g, basis: self.basis.clone(), coeffs })
    }
}

/// Free-module coordinates of an element: `f = Σ coeffs[i] · basis[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    group: GroupType,
    basis: Vec<Weight>,
    coeffs: Vec<InvariantPoly>,
}

impl Decomposition {
    pub fn new(basis: Vec<Weight>, coeffs: Vec<InvariantPoly>) -> Result<Self> {
        let group = basis.first().map(|w| w.group()).ok_or_else(|| Error::Context("empty basis".into()))?;
        if basis.len() != coeffs.len() {
            return Err(Error::Dimension { expected: basis.len(), got: coeffs.len() });
        }
        for c in &coeffs {
            group.check_same(&c.group())?;
        }
        Ok(Decomposition { group, basis, coeffs })
    }

    pub fn group(&self) -> GroupType {
        self.group
    }

    pub fn basis(&self) -> &[Weight] {
        &self.basis
    }

    pub fn coefficients(&self) -> &[InvariantPoly] {
        &self.coeffs
    }

    pub fn coefficient(&self, w: &Weight) -> Option<&InvariantPoly> {
        self.basis.iter().position(|b| b == w).map(|i| &self.coeffs[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `Σ expand(coeffs[i]) · basis[i]`.
    pub fn recompose(&self) -> LaurentPoly {
        // Group by generator monomial first so that one Horner pass covers
        // every basis element.
        let mut leaves: BTreeMap<&[i64], LaurentPoly> = BTreeMap::new();
        for (w, c) in self.basis.iter().zip(&self.coeffs) {
            for (e, k) in c.terms() {
                leaves
                    .entry(e.as_slice())
                    .or_insert_with(|| LaurentPoly::zero(self.group))
                    .add_term(w.clone(), k.clone());
            }
        }
        let leaves: Vec<(&[i64], &LaurentPoly)> = leaves.iter().map(|(e, p)| (*e, p)).collect();
        symreduce::evaluate(self.group, &leaves)
    }

    /// Coefficient-wise sum; both sides must use the same basis.
    pub fn checked_add(&self, other: &Decomposition) -> Result<Decomposition> {
        if self.basis != other.basis {
            return Err(Error::Context("decompositions over different bases".into()));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.checked_add(b)).collect::<Result<_>>()?;
        Ok(Decomposition { group: self.group, basis: self.basis.clone(), coeffs })
    }

    /// Scalar action of `R(G)` on the coefficients.
    pub fn scale_by(&self, p: &InvariantPoly) -> Result<Decomposition> {
        let coeffs = self.coeffs.iter().map(|c| c.checked_mul(p)).collect::<Result<_>>()?;
        Ok(Decomposition { group: self.group, basis: self.basis.clone(), coeffs })
    }

    /// `[[monomial, coefficient], ...]` in basis order, zero entries included.
    pub fn to_json(&self) -> Value {
        let pairs: Vec<Value> =
            self.basis.iter().zip(&self.coeffs).map(|(w, c)| json!([weight_label(w), c.to_string()])).collect();
        json!({ "group": self.group.to_string(), "coefficients": pairs })
    }
}

impl fmt::Display for Decomposition {
    /// Non-zero entries as `monomial: coefficient`, e.g. `1: e1, t: -1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .basis
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| format!("{}: {c}", weight_label(w)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

pub fn decompose(f: &LaurentPoly, ctx: &BasisContext) -> Result<Decomposition> {
    ctx.decompose(f)
}

pub fn recompose(d: &Decomposition) -> LaurentPoly {
    d.recompose()
}

/// Polynomials in `e_1..e_(n-1)` with coefficients in `Z[x_1^±..x_(n-1)^±]`.
/// Keys are `[x exponents..., e exponents...]`.
type Mixed = HashMap<Vec<i32>, BigInt>;

fn mixed_add_term(p: &mut Mixed, k: Vec<i32>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match p.entry(k) {
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::hash_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn mixed_mul(a: &Mixed, b: &Mixed) -> Mixed {
    let mut out = Mixed::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            mixed_add_term(&mut out, ka.iter().zip(kb).map(|(x, y)| x + y).collect(), ca * cb);
        }
    }
    out
}

fn mixed_add(a: &Mixed, b: &Mixed) -> Mixed {
    let mut out = a.clone();
    for (k, c) in b {
        mixed_add_term(&mut out, k.clone(), c.clone());
    }
    out
}

fn mixed_monomial(key: Vec<i32>, c: impl Into<BigInt>) -> Mixed {
    let mut p = Mixed::new();
    mixed_add_term(&mut p, key, c.into());
    p
}

#[derive(Debug, Clone)]
struct Tower {
    group: GroupType,
    /// `down[k][j]` for `j = 1..=d`: `-q_j`, used as `x^d = Σ_j -q_j x^(d-j)`.
    down: Vec<Vec<Mixed>>,
    /// `up[k][j]` for `j = 0..d`: `-q_j / q_d`, used as
    /// `x^-1 = Σ_j up[j] x^(d-1-j)`.
    up: Vec<Vec<Mixed>>,
    /// Full coefficient lists `1, q_1, ..., q_d` as computed by division.
    coeffs: Vec<Vec<Mixed>>,
}

impl Tower {
    fn new(g: GroupType) -> Tower {
        let n = g.n();
        let m = n - 1;
        let width = 2 * m;
        let e_key = |j: usize| {
            let mut k = vec![0i32; width];
            if (1..n).contains(&j) {
                k[m + j - 1] = 1;
            }
            k
        };
        // Q_0 = Σ (-1)^j e_j s^(n-j), e_0 = e_n = 1.
        let mut q: Vec<Mixed> = (0..=n).map(|j| mixed_monomial(e_key(j), if j % 2 == 0 { 1 } else { -1 })).collect();
        let mut down = Vec::new();
        let mut up = Vec::new();
        let mut coeffs = Vec::new();
        for k in 0..m {
            let d = n - k;
            // Constant term of Q_k is (-1)^d x_k...x_n = (-1)^d (x_0...x_(k-1))^-1.
            let mut unit_key = vec![0i32; width];
            let mut inv_key = vec![0i32; width];
            for i in 0..k {
                unit_key[i] = -1;
                inv_key[i] = 1;
            }
            let sign_d: i32 = (-1i32).pow(d as u32);
            let unit = mixed_monomial(unit_key, sign_d);
            let tower = Tower { group: g, down: vec![], up: vec![], coeffs: vec![] };
            assert_eq!(tower.expand(&q[d]), tower.expand(&unit), "constant term of Q_{k} is a unit");
            let mut reduce = q.clone();
            reduce[d] = unit.clone();
            down.push((0..=d).map(|j| if j == 0 { Mixed::new() } else { negate(&reduce[j]) }).collect());
            // -1/q_d = (-1)^(d+1) x_0...x_(k-1)
            let neg_inv = mixed_monomial(inv_key, -sign_d);
            up.push((0..d).map(|j| mixed_mul(&neg_inv, &reduce[j])).collect());
            coeffs.push(q.clone());

            // Synthetic division by (s - x_k).
            let mut xk = vec![0i32; width];
            xk[k] = 1;
            let xk = mixed_monomial(xk, 1);
            let mut next: Vec<Mixed> = vec![q[0].clone()];
            for j in 1..d {
                let prev = mixed_mul(&xk, &next[j - 1]);
                next.push(mixed_add(&q[j], &prev));
            }
            let rem = mixed_add(&q[d], &mixed_mul(&xk, &next[d - 1]));
            assert!(tower.expand(&rem).is_zero(), "Q_{k}(x_{}) must vanish", k + 1);
            q = next;
        }
        Tower { group: g, down, up, coeffs }
    }

    fn expand(&self, p: &Mixed) -> LaurentPoly {
        let g = self.group;
        let m = g.n() - 1;
        let mut by_x: BTreeMap<Vec<i32>, InvariantPoly> = BTreeMap::new();
        for (k, c) in p {
            let e: Vec<i64> = k[m..].iter().map(|&x| i64::from(x)).collect();
            let entry = by_x.entry(k[..m].to_vec()).or_insert_with(|| InvariantPoly::zero(g));
            entry.add_term(e, c.clone());
        }
        let mut out = LaurentPoly::zero(g);
        for (x, c) in by_x {
            let lc: Vec<i64> = x.iter().map(|&a| i64::from(a)).collect();
            let w = Weight::from_lattice_coords(g, &lc).expect("lattice point");
            out += &c.expand().shift(&w);
        }
        out
    }

    fn expanded_coefficients(&self) -> Vec<Vec<LaurentPoly>> {
        self.coeffs.iter().map(|q| q.iter().map(|c| self.expand(c)).collect()).collect()
    }

    fn decompose(&self, f: &LaurentPoly, ctx: &BasisContext) -> Result<Vec<InvariantPoly>> {
        let g = self.group;
        let n = g.n();
        let m = n - 1;
        let mut work = Mixed::new();
        for (w, c) in f.terms() {
            let mut key: Vec<i32> = w
                .lattice_coords()
                .iter()
                .map(|&a| i32::try_from(a).map_err(|_| Error::Domain(format!("exponent of {w} too large"))))
                .collect::<Result<_>>()?;
            key.resize(2 * m, 0);
            mixed_add_term(&mut work, key, c.clone());
        }
        for k in (0..m).rev() {
            work = self.reduce_variable(work, k);
        }
        let mut coeffs = vec![InvariantPoly::zero(g); ctx.len()];
        for (key, c) in work {
            let lc: Vec<i64> = key[..m].iter().map(|&a| i64::from(a)).collect();
            let w = Weight::from_lattice_coords(g, &lc)?;
            let idx =
                ctx.position(&w).ok_or_else(|| Error::Internal(format!("reduced monomial {w} is not in the basis")))?;
            coeffs[idx].add_term(key[m..].iter().map(|&x| i64::from(x)).collect(), c);
        }
        Ok(coeffs)
    }

    /// Brings the exponent of `x_k` into `0..d` where `d = deg Q_k`.
    fn reduce_variable(&self, work: Mixed, k: usize) -> Mixed {
        let d = (self.group.n() - k) as i32;
        let mut buckets: BTreeMap<i32, Mixed> = BTreeMap::new();
        for (key, c) in work {
            mixed_add_term(buckets.entry(key[k]).or_default(), key, c);
        }
        let spread = |buckets: &mut BTreeMap<i32, Mixed>, terms: Mixed, table: &[Mixed], top: i32| {
            // `table[j]` multiplies `x_k^(top - j)`.
            for (key, c) in terms {
                for (j, q) in table.iter().enumerate() {
                    let a = top - j as i32;
                    let bucket = buckets.entry(a).or_default();
                    for (qk, qc) in q {
                        let mut nk: Vec<i32> = key.iter().zip(qk).map(|(x, y)| x + y).collect();
                        nk[k] = a;
                        mixed_add_term(bucket, nk, &c * qc);
                    }
                }
            }
        };
        while let Some(entry) = buckets.first_entry() {
            let a = *entry.key();
            if a >= 0 {
                break;
            }
            let terms = entry.remove();
            // x^a = x^(a+1) · x^-1 = Σ_j up[j] x^(a+d-j)
            spread(&mut buckets, terms, &self.up[k], a + d);
        }
        while let Some(entry) = buckets.last_entry() {
            let a = *entry.key();
            if a < d {
                break;
            }
            let terms = entry.remove();
            // x^a = Σ_j -q_j x^(a-j), j = 1..=d
            spread(&mut buckets, terms, &self.down[k][1..], a - 1);
        }
        let mut out = Mixed::new();
        for (a, terms) in buckets {
            assert!((0..d).contains(&a) || terms.is_empty(), "x_{} exponent {a} left outside 0..{d}", k + 1);
            for (key, c) in terms {
                mixed_add_term(&mut out, key, c);
            }
        }
        out
    }
}

fn negate(p: &Mixed) -> Mixed {
    p.iter().map(|(k, c)| (k.clone(), -c)).collect()
}

/// `t^k = a(w) + b(w) t` in `Z[t^±]` over `Z[w]`, `w = t + 1/t`, as dense
/// coefficient vectors in `w`.
fn rank_one(k: i64) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut a = vec![BigInt::one()];
    let mut b: Vec<BigInt> = vec![];
    let times_w = |p: &[BigInt]| -> Vec<BigInt> { std::iter::once(BigInt::zero()).chain(p.iter().cloned()).collect() };
    let plus = |p: &[BigInt], q: &[BigInt]| -> Vec<BigInt> {
        (0..p.len().max(q.len()))
            .map(|i| p.get(i).cloned().unwrap_or_default() + q.get(i).cloned().unwrap_or_default())
            .collect()
    };
    let neg = |p: &[BigInt]| -> Vec<BigInt> { p.iter().map(|x| -x).collect() };
    for _ in 0..k.abs() {
        (a, b) = if k > 0 {
            // t · (a + b t) = -b + (a + w b) t
            (neg(&b), plus(&a, &times_w(&b)))
        } else {
            // t^-1 · (a + b t) = (w a + b) - a t
            (plus(&times_w(&a), &b), neg(&a))
        };
    }
    (a, b)
}

fn decompose_so4(f: &LaurentPoly, ctx: &BasisContext) -> Result<Vec<InvariantPoly>> {
    let g = f.group();
    let mut cache: HashMap<i64, (Vec<BigInt>, Vec<BigInt>)> = HashMap::new();
    let mut coeffs = vec![InvariantPoly::zero(g); ctx.len()];
    for (w, c) in f.terms() {
        let (p, q) = so4_split(w);
        let rp = cache.entry(p).or_insert_with(|| rank_one(p)).clone();
        let rq = cache.entry(q).or_insert_with(|| rank_one(q)).clone();
        for (i, px) in [&rp.0, &rp.1].into_iter().enumerate() {
            for (j, qy) in [&rq.0, &rq.1].into_iter().enumerate() {
                let idx = ctx.position(&so4_join(g, i as i64, j as i64)).expect("SO(4) basis");
                for (dx, cx) in px.iter().enumerate() {
                    for (dy, cy) in qy.iter().enumerate() {
                        coeffs[idx].add_term(vec![dx as i64, dy as i64], c * cx * cy);
                    }
                }
            }
        }
    }
    Ok(coeffs)
}

/// Steinberg's basis of `R(T)` over `R(SU(n))`: for each permutation `σ`,
/// the weight `σ · Σ_{i : σ(i) > σ(i+1)} ω_i`. One entry per Weyl element,
/// starting with the identity (which gives `1`).
pub fn steinberg_basis(n: usize) -> Result<Vec<Weight>> {
    let g = GroupType::su(n)?;
    let omega = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(j <= i)).collect() };
    Ok(weyl::elements(g)
        .iter()
        .map(|sigma| {
            let p = sigma.perm();
            let mut lambda = vec![0i64; n];
            for i in 0..n - 1 {
                if p[i] > p[i + 1] {
                    lambda.iter_mut().zip(omega(i)).for_each(|(l, o)| *l += o);
                }
            }
            sigma.act_weight(&Weight::new(g, lambda).expect("dominant weight"))
        })
        .collect())
}

/// The mutually inverse monomial maps between the `SO(6)` and `SU(4)` tori:
/// `a = (xyz)^(1/2)`, `b = (x/(yz))^(1/2)`, `c = (z/(xy))^(1/2)`,
/// `d = (y/(xz))^(1/2)`, so that `abcd = 1`.
#[derive(Debug, Clone)]
pub struct So6Maps {
    pub to_su4: MonomialMap,
    pub to_so6: MonomialMap,
}

pub fn so6_change_of_variables() -> &'static So6Maps {
    static MAPS: OnceLock<So6Maps> = OnceLock::new();
    MAPS.get_or_init(|| {
        let su4 = GroupType::su(4).expect("SU(4)");
        let so6 = GroupType::so_even(3).expect("SO(6)");
        let images: Vec<Weight> = [[1, 1, 1], [1, -1, -1], [-1, -1, 1], [-1, 1, -1]]
            .iter()
            .map(|c| Weight::new(so6, c.to_vec()).expect("spin weight"))
            .collect();
        let to_so6 = MonomialMap::from_variable_images(su4, so6, &images).expect("unimodular change of variables");
        So6Maps { to_su4: to_so6.inverse(), to_so6 }
    })
}
