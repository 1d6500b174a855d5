//! Brute-force checks that share no code path with the closed forms or the
//! Monte Carlo estimator.
//!
//! * The lattice oracle enumerates the grid `{k / m : k a composition of m}`
//!   and counts ordered pairs exactly in integer arithmetic.
//! * The quadrature oracle averages the hazard rate upper-set probability over
//!   the simplex with an iterated Gauss–Legendre rule.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::closedform::{comparability_prob, hr_upper_prob_tails};
use crate::error::{Error, Result};
use crate::orders::OrderKind;
use crate::simplex::{check_dim, tail_sums_into, DEFAULT_MAX_DIM};

/// Default cap on the number of lattice points, `C(m+n-1, n-1)`.
pub const DEFAULT_LATTICE_CAP: u64 = 100_000;

/// Largest dimension accepted by the quadrature oracle.
pub const QUADRATURE_MAX_DIM: usize = 5;

/// `C(m+n-1, n-1)`, or `None` on overflow.
pub fn composition_count(n: usize, m: u64) -> Option<u128> {
    let k = (n as u128).checked_sub(1)?;
    let mut acc: u128 = 1;
    for i in 1..=k {
        // acc * (m + i) / i stays integral at every step.
        acc = acc.checked_mul(m as u128 + i)? / i;
    }
    Some(acc)
}

/// Iterator over the compositions of `m` into `n` nonnegative parts, in
/// lexicographic order from `(0, ..., 0, m)` to `(m, 0, ..., 0)`.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<u64>>,
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.take()?;
        let mut k = out.clone();
        let n = k.len();
        // Last nonzero among positions 1..n: move one unit left of it and
        // dump the remainder on the final slot.
        if let Some(p) = (1..n).rev().find(|&i| k[i] > 0) {
            let rest = k[p];
            k[p] = 0;
            k[p - 1] += 1;
            k[n - 1] = rest - 1;
            self.current = Some(k);
        }
        Some(out)
    }
}

pub fn enumerate_compositions(n: usize, m: u64) -> Result<Compositions> {
    enumerate_compositions_capped(n, m, DEFAULT_LATTICE_CAP)
}

pub fn enumerate_compositions_capped(n: usize, m: u64, cap: u64) -> Result<Compositions> {
    check_dim(n, DEFAULT_MAX_DIM)?;
    if m == 0 {
        return Err(Error::InvalidArgument("granularity must be at least 1".into()));
    }
    let count = composition_count(n, m).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::CapExceeded { count, cap });
    }
    let mut first = vec![0; n];
    first[n - 1] = m;
    Ok(Compositions { current: Some(first) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSpec {
    pub n: usize,
    pub m: u64,
    pub order: OrderKind,
    pub cap: u64,
}

impl LatticeSpec {
    pub fn new(order: OrderKind, n: usize, m: u64) -> Self {
        LatticeSpec {
            n,
            m,
            order,
            cap: DEFAULT_LATTICE_CAP,
        }
    }
}

/// Exact pair counts over the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeCounts {
    pub points: u64,
    pub le_pairs: u64,
    pub ge_pairs: u64,
    pub total_pairs: u64,
}

impl LatticeCounts {
    pub fn fraction(&self) -> f64 {
        self.le_pairs as f64 / self.total_pairs as f64
    }
}

/// Counts ordered pairs `(p, q)` of lattice points, equal pairs included, with
/// `p <= q` and with `q <= p`. Predicates run on integer compositions, which
/// is exact because every order is homogeneous in the scale.
pub fn lattice_counts(spec: &LatticeSpec) -> Result<LatticeCounts> {
    let points: Vec<(Vec<i64>, Vec<i64>)> = enumerate_compositions_capped(spec.n, spec.m, spec.cap)?
        .map(|k| {
            let coords: Vec<i64> = k.iter().map(|&x| x as i64).collect();
            let mut tails = vec![0i64; coords.len()];
            let mut acc = 0;
            for (t, &x) in tails.iter_mut().zip(&coords).rev() {
                acc += x;
                *t = acc;
            }
            (coords, tails)
        })
        .collect();
    let order = spec.order;
    let (le_pairs, ge_pairs) = points
        .par_iter()
        .map(|(pc, pt)| {
            points.iter().fold((0u64, 0u64), |(le, ge), (qc, qt)| {
                (
                    le + order.le_raw(pc, pt, qc, qt, 0) as u64,
                    ge + order.le_raw(qc, qt, pc, pt, 0) as u64,
                )
            })
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let k = points.len() as u64;
    Ok(LatticeCounts {
        points: k,
        le_pairs,
        ge_pairs,
        total_pairs: k * k,
    })
}

/// Fraction of ordered lattice pairs with `p <= q`; tends to the continuum
/// comparability probability as `m` grows.
pub fn lattice_comparability(spec: &LatticeSpec) -> Result<f64> {
    lattice_counts(spec).map(|c| c.fraction())
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(points: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; points];
    let mut weights = vec![0.0; points];
    let n = points as f64;
    for i in 0..points.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(points, x);
            deriv = dp;
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(points, x);
        if dp != 0.0 {
            deriv = dp;
        }
        let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        nodes[i] = -x;
        nodes[points - 1 - i] = x;
        weights[i] = w;
        weights[points - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[derive(Debug, Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.comp
    }
}

struct Rule {
    nodes01: Vec<f64>,
    weights01: Vec<f64>,
}

/// Mean of the hazard rate upper-set probability over the probability simplex,
/// i.e. `P(Theta <= Theta')` for independent uniform points.
///
/// Integrates over `(theta_2, ..., theta_n)` with `theta_1 = 1 - sum`, nesting
/// `theta_n` innermost on `[0, 1 - theta_2 - ... - theta_{n-1}]`, and weights
/// by the flat density `(n-1)!`.
pub fn quadrature_mean_upper_prob(n: usize, points_per_axis: usize) -> Result<f64> {
    check_dim(n, QUADRATURE_MAX_DIM)?;
    if points_per_axis == 0 {
        return Err(Error::InvalidArgument(
            "points per axis must be at least 1".into(),
        ));
    }
    let (nodes, weights) = gauss_legendre(points_per_axis);
    let rule = Rule {
        nodes01: nodes.iter().map(|x| 0.5 * (x + 1.0)).collect(),
        weights01: weights.iter().map(|w| 0.5 * w).collect(),
    };
    let dims = n - 1;
    let outer: Vec<f64> = rule
        .nodes01
        .par_iter()
        .zip(&rule.weights01)
        .map(|(&x, &w)| {
            let mut free = vec![0.0; dims];
            let mut point = vec![0.0; n];
            let mut tails = vec![0.0; n];
            free[0] = x;
            w * nested(&rule, &mut free, 1, x, &mut point, &mut tails)
        })
        .collect();
    let mut acc = Neumaier::default();
    for v in outer {
        acc.add(v);
    }
    let density: f64 = (1..n).map(|k| k as f64).product();
    Ok(acc.value() * density)
}

/// Integral over the remaining free coordinates `free[level..]`, each on
/// `[0, 1 - used]`, of the integrand. `free[..level]` already sum to `used`.
fn nested(
    rule: &Rule,
    free: &mut [f64],
    level: usize,
    used: f64,
    point: &mut [f64],
    tails: &mut [f64],
) -> f64 {
    if level == free.len() {
        point[0] = (1.0 - used).max(0.0);
        point[1..].copy_from_slice(free);
        tail_sums_into(point, tails);
        return hr_upper_prob_tails(tails);
    }
    let span = (1.0 - used).max(0.0);
    let mut acc = Neumaier::default();
    for (&x, &w) in rule.nodes01.iter().zip(&rule.weights01) {
        let v = x * span;
        free[level] = v;
        acc.add(w * nested(rule, free, level + 1, used + v, point, tails));
    }
    acc.value() * span
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMethod {
    Lattice,
    Quadrature,
}

impl fmt::Display for OracleMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleMethod::Lattice => "lattice",
            OracleMethod::Quadrature => "quadrature",
        })
    }
}

/// Serialized outcome of an oracle run against the known constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub method: OracleMethod,
    pub order: OrderKind,
    pub n: usize,
    pub granularity: u64,
    pub value: f64,
    pub reference: f64,
    pub abs_error: f64,
}

impl OracleReport {
    pub fn lattice(spec: &LatticeSpec) -> Result<Self> {
        let value = lattice_comparability(spec)?;
        Self::build(OracleMethod::Lattice, spec.order, spec.n, spec.m, value)
    }

    /// Quadrature is defined for the hazard rate order only.
    pub fn quadrature(n: usize, points_per_axis: usize) -> Result<Self> {
        let value = quadrature_mean_upper_prob(n, points_per_axis)?;
        Self::build(
            OracleMethod::Quadrature,
            OrderKind::Hr,
            n,
            points_per_axis as u64,
            value,
        )
    }

    fn build(method: OracleMethod, order: OrderKind, n: usize, granularity: u64, value: f64) -> Result<Self> {
        let reference = comparability_prob(order, n)?;
        Ok(OracleReport {
            method,
            order,
            n,
            granularity,
            value,
            reference,
            abs_error: (value - reference).abs(),
        })
    }
}
