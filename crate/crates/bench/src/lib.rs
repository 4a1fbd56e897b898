//! Shared fixtures for the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtbasis::fuzz::{random_laurent, FuzzConfig};
use rtbasis::{GroupType, LaurentPoly};

pub const SEED: u64 = 0xbe4c;

/// Groups benchmarked by default.
pub fn groups() -> Vec<GroupType> {
    let mut gs: Vec<GroupType> = (2..=5).map(|n| GroupType::su(n).unwrap()).collect();
    gs.extend((2..=3).map(|n| GroupType::so_even(n).unwrap()));
    gs
}

/// `count` seeded random elements of `R(T)`.
pub fn inputs(g: GroupType, count: usize) -> Vec<LaurentPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ g.n() as u64);
    let cfg = FuzzConfig::default();
    (0..count).map(|_| random_laurent(&mut rng, g, &cfg)).collect()
}
