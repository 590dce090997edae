//! Seeded random graphs.
//!
//! All randomness goes through xoshiro256++ (Blackman and Vigna). A 64-bit
//! seed is expanded into the 256-bit state with SplitMix64, as done by
//! `rand_core::SeedableRng::seed_from_u64`. The generator's recurrence is
//!
//! ```text
//! result = rotl(s0 + s3, 23) + s0
//! t  = s1 << 17
//! s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45)
//! ```
//!
//! Independent per-trial streams are derived by hashing `(seed, index)`
//! through the SplitMix64 finalizer, so trial `i` sees the same stream no
//! matter which thread runs it.

use rand::{Rng, RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub type GraphRng = Xoshiro256PlusPlus;

/// SplitMix64 output function.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn rng_from_seed(seed: u64) -> GraphRng {
    GraphRng::seed_from_u64(seed)
}

/// Stream for trial `index` of an experiment seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> GraphRng {
    GraphRng::seed_from_u64(mix64(seed ^ mix64(index)))
}

/// Uniform double in `[0, 1)` from the top 53 bits of one draw.
#[inline]
fn unit_f64<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("edge probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// Samples `G(n, p)` from an existing stream. Pairs are visited as
/// `(u, v)`, `u < v`, `u` outer; each consumes exactly one draw and becomes
/// an edge when the draw is below `p`.
pub fn gnp_from_rng<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    check_probability(p)?;
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if unit_f64(rng) < p {
                g.link(u, v);
            }
        }
    }
    Ok(g)
}

/// Erdős–Rényi `G(n, p)` with a deterministic stream derived from `seed`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidInput("random graph needs at least one vertex".into()));
    }
    gnp_from_rng(n, p, &mut rng_from_seed(seed))
}

/// Uniformly random `size`-subset of `0..n` (partial Fisher–Yates).
pub fn random_subset<R: Rng + ?Sized>(n: usize, size: usize, rng: &mut R) -> VertexSet {
    debug_assert!(size <= n);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..size {
        let j = rng.random_range(i..n);
        pool.swap(i, j);
    }
    pool[..size].iter().copied().collect()
}
