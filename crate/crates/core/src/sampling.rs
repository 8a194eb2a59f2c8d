//! Deterministic seeding shared by the random checks and the Monte Carlo estimators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffring::Rational;

/// Default seed when none is supplied.
pub const DEFAULT_SEED: u64 = 0x5EED_2012;

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent stream for shard `shard` of a run seeded with `seed`.
pub fn shard_rng(seed: u64, shard: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(shard)))
}

/// Integer point with coordinates uniform in `[-bound, bound]`, as rationals.
pub fn random_int_point(rng: &mut impl Rng, dim: usize, bound: i64) -> Vec<Rational> {
    (0..dim)
        .map(|_| Rational::from_integer(rng.random_range(-bound..=bound).into()))
        .collect()
}

/// Rational point with numerators in `[-bound, bound]` and denominators in `1..=den`.
pub fn random_rational_point(rng: &mut impl Rng, dim: usize, bound: i64, den: i64) -> Vec<Rational> {
    (0..dim)
        .map(|_| {
            let n: i64 = rng.random_range(-bound..=bound);
            let d: i64 = rng.random_range(1..=den);
            Rational::new(n.into(), d.into())
        })
        .collect()
}
