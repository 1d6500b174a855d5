//! Seeded uniform sampling on the scaled simplex.
//!
//! Points are drawn by normalizing `n` independent standard exponentials
//! (a flat Dirichlet draw). The generator is ChaCha8 keyed from a 64-bit
//! seed; independent substreams use ChaCha's 64-bit stream selector.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::simplex::{check_dim, check_scale, compensated_sum, SimplexPoint, DEFAULT_MAX_DIM};

/// Identity of the pseudo-random generator, recorded in every report.
pub const GENERATOR_NAME: &str = "chacha8/rand_chacha-0.9/seed_from_u64+stream";

const TWO_POW_NEG_53: f64 = 1.0 / (1u64 << 53) as f64;

/// Deterministic generator: identical seed and stream give identical output.
#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Generator for stream `stream` under key `seed`. Distinct streams are
    /// disjoint keystreams, so chunks never share random numbers.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        SeededRng { inner }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on `(0, 1]`, 53 bits of resolution. Never returns zero.
    #[inline]
    pub fn uniform_open_closed(&mut self) -> f64 {
        ((self.inner.next_u64() >> 11) + 1) as f64 * TWO_POW_NEG_53
    }

    #[inline]
    pub fn standard_exponential(&mut self) -> f64 {
        -self.uniform_open_closed().ln()
    }
}

pub fn rng_from_seed(seed: u64) -> SeededRng {
    SeededRng::new(seed)
}

/// Uniform point of the simplex of dimension `n` and scale `u`.
pub fn sample_uniform_simplex(n: usize, u: f64, rng: &mut SeededRng) -> Result<SimplexPoint> {
    check_dim(n, DEFAULT_MAX_DIM)?;
    check_scale(u)?;
    let mut coords = vec![0.0; n];
    fill_uniform_simplex(&mut coords, u, rng);
    Ok(SimplexPoint::from_trusted(coords, u))
}

/// Writes a uniform point of scale `u` into `out` (length `n`), without
/// allocating. Consumes exactly `out.len()` exponentials except in the
/// probability-`2^-53n` event that all of them are zero.
#[inline]
pub fn fill_uniform_simplex(out: &mut [f64], u: f64, rng: &mut SeededRng) {
    let mut total = 0.0;
    while total <= 0.0 {
        total = 0.0;
        for x in out.iter_mut() {
            *x = rng.standard_exponential();
            total += *x;
        }
    }
    let factor = u / total;
    for x in out.iter_mut() {
        *x *= factor;
    }
    let sum = compensated_sum(out);
    if sum != u {
        let fix = u / sum;
        for x in out.iter_mut() {
            *x *= fix;
        }
    }
}
