//! Exact probabilities for uniformly distributed simplex points.

use crate::error::{Error, Result};
use crate::orders::OrderKind;
use crate::simplex::{check_dim, SimplexPoint, DEFAULT_MAX_DIM};

/// Largest `n` for which `n!` is representable in a `u64`.
pub const LR_MAX_DIM: usize = 20;

/// Probability that a uniform point of the simplex dominates `theta` in the
/// hazard rate order:
///
/// ```text
/// prod_{i=1}^{n-1} (1 - (T_{i+1} / T_i)^(n-i))
/// ```
///
/// Each factor depends only on a ratio of tail sums, so the result does not
/// depend on the scale. Fails with [`Error::DegenerateTail`] when `T_{n-1} = 0`.
pub fn hr_upper_prob(theta: &SimplexPoint) -> Result<f64> {
    let tails = theta.tail_sums();
    let t = tails.as_slice();
    let n = t.len();
    if t[n - 2] <= 0.0 {
        return Err(Error::DegenerateTail { index: n - 1 });
    }
    Ok(hr_upper_prob_tails(t))
}

/// Unchecked product over a tail vector with `T_{n-1} > 0`.
pub fn hr_upper_prob_tails(t: &[f64]) -> f64 {
    let n = t.len();
    let mut prod = 1.0;
    for i in 0..n - 1 {
        let ratio = t[i + 1] / t[i];
        prod *= 1.0 - ratio.powi((n - 1 - i) as i32);
    }
    prod.clamp(0.0, 1.0)
}

/// `P(Theta <= Theta')` in the hazard rate order: `2^(1-n)`.
pub fn hr_comparability_prob(n: usize) -> Result<f64> {
    check_dim(n, DEFAULT_MAX_DIM)?;
    Ok(1.0 / (1u64 << (n - 1)) as f64)
}

/// `P(Theta <= Theta')` in the usual stochastic order: `1/n`.
pub fn st_comparability_prob(n: usize) -> Result<f64> {
    check_dim(n, DEFAULT_MAX_DIM)?;
    Ok(1.0 / n as f64)
}

/// `P(Theta <= Theta')` in the likelihood ratio order: `1/n!`, for `n <= 20`.
pub fn lr_comparability_prob(n: usize) -> Result<f64> {
    check_dim(n, LR_MAX_DIM)?;
    let fact: u64 = (2..=n as u64).product();
    Ok(1.0 / fact as f64)
}

pub fn comparability_prob(order: OrderKind, n: usize) -> Result<f64> {
    match order {
        OrderKind::St => st_comparability_prob(n),
        OrderKind::Hr => hr_comparability_prob(n),
        OrderKind::Lr => lr_comparability_prob(n),
    }
}
