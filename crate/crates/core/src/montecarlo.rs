//! Reproducible parallel Monte Carlo estimation of comparability probabilities.
//!
//! Work is split into fixed-size chunks. Chunk `k` draws from generator
//! stream `k` keyed by the run seed, so hit counts depend only on
//! `(seed, samples, chunk_size, task)`. The rayon pool size only changes how
//! fast the chunks are processed, never what they produce.

use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::orders::OrderKind;
use crate::sampling::{fill_uniform_simplex, SeededRng, GENERATOR_NAME};
use crate::simplex::{check_dim, check_scale, tail_sums_into, SimplexPoint, DEFAULT_MAX_DIM};

pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 14;
pub const DEFAULT_CONFIDENCE: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub confidence: f64,
    pub chunk_size: u64,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        McConfig {
            samples,
            seed,
            confidence: DEFAULT_CONFIDENCE,
            chunk_size: DEFAULT_CHUNK_SIZE,
        }
    }

    pub fn with_confidence(mut self, confidence: f64) -> Self {
        self.confidence = confidence;
        self
    }

    pub fn with_chunk_size(mut self, chunk_size: u64) -> Self {
        self.chunk_size = chunk_size;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::NoSamples);
        }
        if self.chunk_size == 0 {
            return Err(Error::InvalidChunkSize);
        }
        check_confidence(self.confidence)
    }

    pub fn chunks(&self) -> u64 {
        self.samples.div_ceil(self.chunk_size)
    }

    fn chunk_len(&self, k: u64) -> u64 {
        (self.samples - k * self.chunk_size).min(self.chunk_size)
    }
}

/// Binomial estimate with a Wilson score interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateResult {
    pub hits: u64,
    pub samples: u64,
    pub p_hat: f64,
    pub std_err: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
    pub seed: u64,
    pub chunks: u64,
}

impl EstimateResult {
    pub fn from_counts(hits: u64, samples: u64, confidence: f64, seed: u64, chunks: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::NoSamples);
        }
        if hits > samples {
            return Err(Error::InvalidArgument(format!(
                "{hits} hits out of {samples} samples"
            )));
        }
        check_confidence(confidence)?;
        let p_hat = hits as f64 / samples as f64;
        let std_err = (p_hat * (1.0 - p_hat) / samples as f64).sqrt();
        let (ci_low, ci_high) = wilson_interval(hits, samples, confidence)?;
        Ok(EstimateResult {
            hits,
            samples,
            p_hat,
            std_err,
            ci_low,
            ci_high,
            confidence,
            seed,
            chunks,
        })
    }

    /// `|p_hat - p| <= k * sqrt(p (1 - p) / samples)`, the error taken at the reference `p`.
    pub fn within_sigmas(&self, p: f64, k: f64) -> bool {
        let sigma = (p * (1.0 - p) / self.samples as f64).sqrt();
        (self.p_hat - p).abs() <= k * sigma
    }
}

/// Wilson score interval for `hits` successes out of `samples` trials.
pub fn wilson_interval(hits: u64, samples: u64, confidence: f64) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    check_confidence(confidence)?;
    let z = Normal::standard().inverse_cdf(1.0 - (1.0 - confidence) / 2.0);
    let n = samples as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let low = (center - half).clamp(0.0, 1.0).min(p);
    let high = (center + half).clamp(0.0, 1.0).max(p);
    Ok((low, high))
}

/// Merges per-chunk `(hits, samples)` counts. Pure sums, so any order of the
/// input gives the same result.
pub fn combine_chunks(chunks: &[(u64, u64)], confidence: f64, seed: u64) -> Result<EstimateResult> {
    if chunks.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (hits, samples) = chunks
        .iter()
        .fold((0u64, 0u64), |(h, s), &(ch, cs)| (h + ch, s + cs));
    EstimateResult::from_counts(hits, samples, confidence, seed, chunks.len() as u64)
}

/// A drawn point with its tail sums, borrowed from per-chunk scratch buffers.
#[derive(Debug, Clone, Copy)]
pub struct Draw<'a> {
    pub coords: &'a [f64],
    pub tails: &'a [f64],
}

/// Counts pairs `(Theta, Theta')` of independent uniform points (drawn in
/// that order) for which `pred` holds.
pub fn count_pairs<F>(n: usize, u: f64, cfg: &McConfig, pred: F) -> Result<EstimateResult>
where
    F: Fn(Draw<'_>, Draw<'_>) -> bool + Sync,
{
    check_task(n, u, cfg)?;
    let counts: Vec<(u64, u64)> = (0..cfg.chunks())
        .into_par_iter()
        .map(|k| {
            let mut rng = SeededRng::with_stream(cfg.seed, k);
            let len = cfg.chunk_len(k);
            let (mut a, mut ta, mut b, mut tb) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
            let mut hits = 0;
            for _ in 0..len {
                fill_uniform_simplex(&mut a, u, &mut rng);
                fill_uniform_simplex(&mut b, u, &mut rng);
                tail_sums_into(&a, &mut ta);
                tail_sums_into(&b, &mut tb);
                let first = Draw {
                    coords: &a,
                    tails: &ta,
                };
                let second = Draw {
                    coords: &b,
                    tails: &tb,
                };
                hits += pred(first, second) as u64;
            }
            (hits, len)
        })
        .collect();
    combine_chunks(&counts, cfg.confidence, cfg.seed)
}

/// Counts single uniform draws `Theta` for which `pred` holds.
pub fn count_points<F>(n: usize, u: f64, cfg: &McConfig, pred: F) -> Result<EstimateResult>
where
    F: Fn(Draw<'_>) -> bool + Sync,
{
    check_task(n, u, cfg)?;
    let counts: Vec<(u64, u64)> = (0..cfg.chunks())
        .into_par_iter()
        .map(|k| {
            let mut rng = SeededRng::with_stream(cfg.seed, k);
            let len = cfg.chunk_len(k);
            let (mut x, mut tx) = (vec![0.0; n], vec![0.0; n]);
            let mut hits = 0;
            for _ in 0..len {
                fill_uniform_simplex(&mut x, u, &mut rng);
                tail_sums_into(&x, &mut tx);
                hits += pred(Draw {
                    coords: &x,
                    tails: &tx,
                }) as u64;
            }
            (hits, len)
        })
        .collect();
    combine_chunks(&counts, cfg.confidence, cfg.seed)
}

/// Estimates `P(Theta <= Theta')` for independent uniform points of the simplex.
pub fn estimate_comparability(order: OrderKind, n: usize, u: f64, cfg: &McConfig) -> Result<EstimateResult> {
    count_pairs(n, u, cfg, |a, b| {
        order.le_raw(a.coords, a.tails, b.coords, b.tails, 0.0)
    })
}

/// Estimates `P(theta <= Theta)`, the probability that a uniform point lies in
/// the upper set of `theta`.
pub fn estimate_upper_prob(order: OrderKind, theta: &SimplexPoint, cfg: &McConfig) -> Result<EstimateResult> {
    let tails = theta.tail_sums();
    let (coords, tails) = (theta.coords(), tails.as_slice());
    count_points(theta.dim(), theta.scale(), cfg, |x| {
        order.le_raw(coords, tails, x.coords, x.tails, 0.0)
    })
}

/// Serialized form of an estimate, with the task that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub order: OrderKind,
    pub n: usize,
    pub u: f64,
    pub samples: u64,
    pub hits: u64,
    pub p_hat: f64,
    pub std_err: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
    pub seed: u64,
    pub chunk_size: u64,
    pub generator_name: &'static str,
}

impl EstimateReport {
    pub fn new(order: OrderKind, n: usize, u: f64, cfg: &McConfig, result: &EstimateResult) -> Self {
        EstimateReport {
            order,
            n,
            u,
            samples: result.samples,
            hits: result.hits,
            p_hat: result.p_hat,
            std_err: result.std_err,
            ci_low: result.ci_low,
            ci_high: result.ci_high,
            confidence: result.confidence,
            seed: result.seed,
            chunk_size: cfg.chunk_size,
            generator_name: GENERATOR_NAME,
        }
    }
}

fn check_task(n: usize, u: f64, cfg: &McConfig) -> Result<()> {
    check_dim(n, DEFAULT_MAX_DIM)?;
    check_scale(u)?;
    cfg.validate()
}

fn check_confidence(c: f64) -> Result<()> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidConfidence(c));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combine_examples() {
        let r = combine_chunks(&[(3, 10), (7, 10)], 0.95, 1).unwrap();
        assert_eq!((r.hits, r.samples, r.p_hat, r.chunks), (10, 20, 0.5, 2));
        let r = combine_chunks(&[(0, 5)], 0.95, 1).unwrap();
        assert_eq!(r.p_hat, 0.0);
        assert_eq!(r.ci_low, 0.0);
        assert!(r.ci_high > 0.0);
        assert_eq!(combine_chunks(&[], 0.95, 1), Err(Error::EmptyInput));
    }

    #[test]
    fn combine_is_order_free() {
        let chunks = [(1, 9), (4, 4), (0, 7), (12, 30), (5, 5)];
        let base = combine_chunks(&chunks, 0.9, 3).unwrap();
        let mut rev = chunks;
        rev.reverse();
        assert_eq!(combine_chunks(&rev, 0.9, 3).unwrap(), base);
        let mut rot = chunks;
        rot.rotate_left(2);
        assert_eq!(combine_chunks(&rot, 0.9, 3).unwrap(), base);
    }

    #[test]
    fn wilson_reference_values() {
        // 95%: z = 1.959963984540054; 5 of 10 gives 0.5 -/+ 0.2634...
        let (lo, hi) = wilson_interval(5, 10, 0.95).unwrap();
        assert!((lo - 0.236593090512564).abs() < 1e-9, "{lo}");
        assert!((hi - 0.763406909487436).abs() < 1e-9, "{hi}");
        let (lo, hi) = wilson_interval(10, 10, 0.95).unwrap();
        assert!(lo < 1.0 && hi == 1.0);
        assert!(wilson_interval(1, 10, 1.0).is_err());
        assert!(wilson_interval(1, 0, 0.9).is_err());
    }

    #[test]
    fn config_validation() {
        let mut rng_free = McConfig::new(0, 1);
        assert_eq!(rng_free.validate(), Err(Error::NoSamples));
        rng_free.samples = 10;
        assert!(rng_free.validate().is_ok());
        assert_eq!(
            rng_free.with_chunk_size(0).validate(),
            Err(Error::InvalidChunkSize)
        );
        assert!(matches!(
            rng_free.with_confidence(0.0).validate(),
            Err(Error::InvalidConfidence(_))
        ));
        assert_eq!(McConfig::new(100, 0).with_chunk_size(30).chunks(), 4);
    }

    #[test]
    fn zero_upper_set_has_no_hits() {
        let theta = SimplexPoint::probability(vec![0.0, 0.5, 0.5]).unwrap();
        let r = estimate_upper_prob(OrderKind::Hr, &theta, &McConfig::new(20_000, 11)).unwrap();
        assert_eq!(r.hits, 0);
    }

    #[test]
    fn report_carries_generator() {
        let cfg = McConfig::new(1000, 4);
        let r = estimate_comparability(OrderKind::St, 2, 1.0, &cfg).unwrap();
        let rep = EstimateReport::new(OrderKind::St, 2, 1.0, &cfg, &r);
        assert_eq!(rep.generator_name, GENERATOR_NAME);
        assert_eq!(rep.hits, r.hits);
        assert_eq!(rep.chunk_size, DEFAULT_CHUNK_SIZE);
    }
}
