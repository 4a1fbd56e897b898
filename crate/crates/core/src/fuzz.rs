//! Seeded random generators for ring elements, shared by the property
//! tests, the `verify` command and the benchmarks.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rand::Rng;

use crate::error::Result;
use crate::freebasis::standard_basis;
use crate::lattice::{Family, GroupType, Weight};
use crate::laurent::LaurentPoly;
use crate::symreduce::{generator_count, InvariantPoly};
use crate::weyl;

/// Shape of random Laurent polynomials.
#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub terms: RangeInclusive<usize>,
    /// Range of each exponent; spin coordinates get an extra `±1/2`.
    pub exponents: RangeInclusive<i64>,
    pub coefficients: RangeInclusive<i64>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { terms: 1..=4, exponents: -6..=6, coefficients: -9..=9 }
    }
}

impl FuzzConfig {
    /// The default shape with a different exponent range.
    pub fn with_exponents(exponents: RangeInclusive<i64>) -> Self {
        FuzzConfig { exponents, ..Default::default() }
    }
}

/// A random lattice point. `SO(2n)` weights for `n >= 2` are spin with probability 1/2.
pub fn random_weight<R: Rng + ?Sized>(rng: &mut R, g: GroupType, exponents: &RangeInclusive<i64>) -> Weight {
    let n = g.n();
    let e: Vec<i64> = (0..n).map(|_| rng.gen_range(exponents.clone())).collect();
    match g.family() {
        Family::SU => Weight::new(g, e).expect("integer point"),
        Family::SOEven => {
            let spin = n >= 2 && rng.gen_bool(0.5);
            let coords: Vec<i64> = e.iter().map(|x| 2 * x + i64::from(spin)).collect();
            Weight::new(g, coords).expect("constant parity")
        }
    }
}

fn random_coefficient<R: Rng + ?Sized>(rng: &mut R, range: &RangeInclusive<i64>) -> BigInt {
    loop {
        let c = rng.gen_range(range.clone());
        if c != 0 {
            return c.into();
        }
    }
}

pub fn random_laurent<R: Rng + ?Sized>(rng: &mut R, g: GroupType, cfg: &FuzzConfig) -> LaurentPoly {
    let k = rng.gen_range(cfg.terms.clone());
    let mut f = LaurentPoly::zero(g);
    for _ in 0..k {
        f.add_term(random_weight(rng, g, &cfg.exponents), random_coefficient(rng, &cfg.coefficients));
    }
    f
}

/// A sparse random polynomial in the generators with exponents up to `max_exponent`.
pub fn random_invariant<R: Rng + ?Sized>(
    rng: &mut R,
    g: GroupType,
    terms: usize,
    max_exponent: i64,
    coefficients: &RangeInclusive<i64>,
) -> InvariantPoly {
    let k = generator_count(g);
    let laurent = g.family() == Family::SOEven && g.n() == 1;
    let lo = if laurent { -max_exponent } else { 0 };
    let mut p = InvariantPoly::zero(g);
    for _ in 0..terms {
        let e: Vec<i64> = (0..k).map(|_| rng.gen_range(lo..=max_exponent)).collect();
        p.add_term(e, random_coefficient(rng, coefficients));
    }
    p
}

/// A random invariant `Σ_w w(f)` for a random `f`.
pub fn random_symmetrized<R: Rng + ?Sized>(rng: &mut R, g: GroupType, cfg: &FuzzConfig) -> LaurentPoly {
    let f = random_laurent(rng, g, cfg);
    let mut out = LaurentPoly::zero(g);
    for w in weyl::elements(g) {
        out += &w.act(&f).expect("same group");
    }
    out
}

/// Runs `trials` decompose/recompose round trips; returns how many matched exactly.
pub fn round_trip_trials<R: Rng + ?Sized>(rng: &mut R, g: GroupType, trials: usize, cfg: &FuzzConfig) -> Result<usize> {
    let ctx = standard_basis(g);
    let mut ok = 0;
    for _ in 0..trials {
        let f = random_laurent(rng, g, cfg);
        if ctx.decompose(&f)?.recompose() == f {
            ok += 1;
        }
    }
    Ok(ok)
}
