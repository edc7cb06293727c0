//! Seeded random sources for shot-noise simulation.
//!
//! Every stream is a ChaCha8 generator (`rand_chacha::ChaCha8Rng`) seeded
//! from a 64-bit value. Independent tasks derive their own seed from a master
//! seed with a SplitMix64 mix of `(master, stream, index)`, so results do not
//! depend on execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};

pub type SimRng = ChaCha8Rng;

/// Stream tags mixed into derived seeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Fringe = 1,
    ArmBlock = 2,
    Tomography = 3,
}

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, stream: Stream, index: u64) -> u64 {
    let s = splitmix64(master ^ splitmix64(stream as u64));
    splitmix64(s ^ splitmix64(index.wrapping_add(0x1234_5678)))
}

/// Number of successes in `shots` Bernoulli trials.
pub fn binomial(rng: &mut SimRng, shots: u64, p: f64) -> u64 {
    let p = if p.is_finite() {
        p.clamp(0.0, 1.0)
    } else {
        0.0
    };
    Binomial::new(shots, p)
        .expect("probability clamped to [0, 1]")
        .sample(rng)
}

/// Multinomial draw by sequential conditional binomials.
pub fn multinomial<const K: usize>(
    rng: &mut SimRng,
    shots: u64,
    probs: &[f64; K],
) -> Result<[u64; K]> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let clean: Vec<f64> = probs.iter().map(|p| p.max(0.0)).collect();
    let total: f64 = clean.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::OutOfRange {
            what: "outcome probability total",
            value: total,
        });
    }
    let mut counts = [0u64; K];
    let mut remaining = shots;
    let mut mass_left = 1.0;
    for k in 0..K {
        let p = clean[k] / total;
        if k == K - 1 || remaining == 0 {
            counts[k] = remaining;
            break;
        }
        let conditional = if mass_left > 0.0 { p / mass_left } else { 0.0 };
        let n = binomial(rng, remaining, conditional);
        counts[k] = n;
        remaining -= n;
        mass_left -= p;
    }
    Ok(counts)
}
