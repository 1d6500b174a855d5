//! Points of the scaled probability simplex and the distributions they induce.
//!
//! A [`SimplexPoint`] is a vector of `n >= 2` nonnegative coordinates summing
//! to a positive scale `u`. Coordinates are stored exactly as given; the
//! constructor validates but never renormalizes.

use serde::Serialize;

use crate::error::{Error, Result};

/// Relative tolerance applied to the sum constraint `|sum - u| <= tol * u`.
pub const SUM_REL_TOL: f64 = 1e-9;

/// Default upper bound on the dimension. Keeps `(n-1)!` and `u^(n-1)` in `f64` range.
pub const DEFAULT_MAX_DIM: usize = 64;

/// Smallest admissible dimension.
pub const MIN_DIM: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexPoint {
    coords: Vec<f64>,
    scale: f64,
}

impl SimplexPoint {
    /// Validates `coords` as a point of the simplex of scale `u`.
    pub fn new(coords: Vec<f64>, u: f64) -> Result<Self> {
        Self::with_max_dim(coords, u, DEFAULT_MAX_DIM)
    }

    pub fn with_max_dim(coords: Vec<f64>, u: f64, max_dim: usize) -> Result<Self> {
        check_scale(u)?;
        check_dim(coords.len(), max_dim)?;
        for (index, &value) in coords.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
            if value < 0.0 {
                return Err(Error::NegativeCoordinate { index, value });
            }
        }
        let sum = compensated_sum(&coords);
        if (sum - u).abs() > SUM_REL_TOL * u {
            return Err(Error::SumMismatch {
                sum,
                scale: u,
                tol: SUM_REL_TOL,
            });
        }
        Ok(SimplexPoint { coords, scale: u })
    }

    /// Point of the probability simplex (`u = 1`).
    pub fn probability(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords, 1.0)
    }

    pub(crate) fn from_trusted(coords: Vec<f64>, scale: f64) -> Self {
        debug_assert!(coords.len() >= MIN_DIM);
        SimplexPoint { coords, scale }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn tail_sums(&self) -> TailSums {
        tail_sums(self)
    }

    /// The same point expressed in the simplex of scale `c`, i.e. `coords * c / u`.
    pub fn rescaled(&self, c: f64) -> Result<SimplexPoint> {
        check_scale(c)?;
        let factor = c / self.scale;
        let coords = self.coords.iter().map(|&x| x * factor).collect();
        SimplexPoint::new(coords, c)
    }

    pub(crate) fn same_shape(&self, other: &SimplexPoint) -> Result<()> {
        let same_scale = (self.scale - other.scale).abs() <= SUM_REL_TOL * self.scale.max(other.scale);
        if self.dim() != other.dim() || !same_scale {
            return Err(Error::ShapeMismatch {
                left_n: self.dim(),
                left_u: self.scale,
                right_n: other.dim(),
                right_u: other.scale,
            });
        }
        Ok(())
    }
}

/// Convenience wrapper matching the free-function form of the constructor.
pub fn make_simplex_point(coords: Vec<f64>, u: f64) -> Result<SimplexPoint> {
    SimplexPoint::new(coords, u)
}

/// Survival vector `T_i = theta_i + ... + theta_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailSums {
    tails: Vec<f64>,
}

impl TailSums {
    pub fn as_slice(&self) -> &[f64] {
        &self.tails
    }

    pub fn len(&self) -> usize {
        self.tails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tails.is_empty()
    }

    /// `T_i` with one-based `i`, matching the usual indexing of tail sums.
    pub fn get(&self, i: usize) -> Option<f64> {
        i.checked_sub(1).and_then(|k| self.tails.get(k).copied())
    }
}

pub fn tail_sums(p: &SimplexPoint) -> TailSums {
    let mut tails = vec![0.0; p.dim()];
    tail_sums_into(p.coords(), &mut tails);
    TailSums { tails }
}

/// Backward cumulative sum of `coords` into `out`. With nonnegative input
/// the result is nonincreasing exactly, not only up to rounding.
pub fn tail_sums_into(coords: &[f64], out: &mut [f64]) {
    assert_eq!(coords.len(), out.len());
    let mut acc = 0.0;
    for (t, &x) in out.iter_mut().zip(coords).rev() {
        acc += x;
        *t = acc;
    }
}

/// Euclidean `(n-1)`-volume of the simplex of dimension `n` and scale `u`:
/// `sqrt(n) * u^(n-1) / (n-1)!`.
pub fn simplex_volume(n: usize, u: f64) -> Result<f64> {
    check_scale(u)?;
    check_dim(n, DEFAULT_MAX_DIM)?;
    let base = (1..n).fold(1.0, |acc, k| acc * u / k as f64);
    Ok((n as f64).sqrt() * base)
}

/// A law on `x_1 < ... < x_n` with masses given by a probability-simplex point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteDistribution {
    support: Vec<f64>,
    masses: SimplexPoint,
}

impl FiniteDistribution {
    pub fn new(support: Vec<f64>, masses: Vec<f64>) -> Result<Self> {
        let masses = SimplexPoint::probability(masses)?;
        if support.len() != masses.dim() {
            return Err(Error::InvalidArgument(format!(
                "support has {} points but {} masses were given",
                support.len(),
                masses.dim()
            )));
        }
        for (index, &value) in support.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
            if index > 0 && value <= support[index - 1] {
                return Err(Error::SupportNotIncreasing { index, value });
            }
        }
        Ok(FiniteDistribution { support, masses })
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn masses(&self) -> &SimplexPoint {
        &self.masses
    }

    /// `P(X >= x_i)` for every support point.
    pub fn survival(&self) -> TailSums {
        self.masses.tail_sums()
    }

    /// Masses of `self` and `other` after checking that both live on the same support.
    pub fn aligned<'a>(
        &'a self,
        other: &'a FiniteDistribution,
    ) -> Result<(&'a SimplexPoint, &'a SimplexPoint)> {
        if self.support != other.support {
            return Err(Error::ShapeMismatch {
                left_n: self.support.len(),
                left_u: 1.0,
                right_n: other.support.len(),
                right_u: 1.0,
            });
        }
        Ok((&self.masses, &other.masses))
    }
}

pub(crate) fn check_scale(u: f64) -> Result<()> {
    if !(u.is_finite() && u > 0.0) {
        return Err(Error::NonPositiveScale(u));
    }
    Ok(())
}

pub(crate) fn check_dim(n: usize, max: usize) -> Result<()> {
    if n < MIN_DIM {
        return Err(Error::DimensionTooSmall { n, min: MIN_DIM });
    }
    if n > max {
        return Err(Error::DimensionTooLarge { n, max });
    }
    Ok(())
}

/// Neumaier summation.
pub(crate) fn compensated_sum(xs: &[f64]) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
