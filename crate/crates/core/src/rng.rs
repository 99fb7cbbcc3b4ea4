//! Seeded random streams.
//!
//! Every random quantity comes from a xoshiro256++ generator whose seed is
//! derived from the user seed and a path of integers (draw index, SNR index,
//! purpose tag, ...). Each path element is folded in with one SplitMix64 step,
//! and the resulting 64-bit value seeds the generator via
//! `SeedableRng::seed_from_u64`. Streams therefore depend only on
//! `(seed, path)`, never on evaluation order.

use rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
pub use rand_xoshiro::Xoshiro256PlusPlus;

pub type StreamRng = Xoshiro256PlusPlus;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent generator for `(seed, path)`.
pub fn substream(seed: u64, path: &[u64]) -> StreamRng {
    let key = path.iter().fold(splitmix64(seed), |acc, &p| splitmix64(acc ^ splitmix64(p)));
    Xoshiro256PlusPlus::seed_from_u64(key)
}

#[inline]
pub fn standard_normal<R: rand_core::RngCore + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}
