//! Shared fixtures for the benchmarks.

use simplexord::{rng_from_seed, sample_uniform_simplex, SimplexPoint};

/// `count` independent uniform pairs in the probability simplex of dimension `n`.
pub fn uniform_pairs(n: usize, count: usize, seed: u64) -> Vec<(SimplexPoint, SimplexPoint)> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| {
            let a = sample_uniform_simplex(n, 1.0, &mut rng).unwrap();
            let b = sample_uniform_simplex(n, 1.0, &mut rng).unwrap();
            (a, b)
        })
        .collect()
}
