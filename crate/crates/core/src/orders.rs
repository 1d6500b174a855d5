//! The usual stochastic, hazard rate and likelihood ratio orders on points of
//! a common simplex.
//!
//! All predicates are evaluated in product (cross-multiplied) form, so zero
//! tail sums or zero masses need no special handling. Only the `i < j`
//! conditions are checked; the `i = j` ones are identities.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::{compensated_sum, SimplexPoint, TailSums};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    /// Usual stochastic order.
    St,
    /// Hazard rate order.
    Hr,
    /// Likelihood ratio order.
    Lr,
}

impl OrderKind {
    pub const ALL: [OrderKind; 3] = [OrderKind::St, OrderKind::Hr, OrderKind::Lr];

    pub fn as_str(self) -> &'static str {
        match self {
            OrderKind::St => "st",
            OrderKind::Hr => "hr",
            OrderKind::Lr => "lr",
        }
    }

    /// `a <= b` in this order, given coordinates and precomputed tail sums of both
    /// points. No shape checks; this is the allocation-free path used by the
    /// samplers and oracles.
    #[inline]
    pub fn le_raw<T: Scalar>(self, a: &[T], a_tails: &[T], b: &[T], b_tails: &[T], eps: T) -> bool {
        match self {
            OrderKind::St => st_le_tails(a_tails, b_tails, eps),
            OrderKind::Hr => hr_le_tails(a_tails, b_tails, eps),
            OrderKind::Lr => lr_le_coords(a, b, eps),
        }
    }

    pub fn le(self, a: &SimplexPoint, b: &SimplexPoint, eps: f64) -> Result<bool> {
        match self {
            OrderKind::St => st_le(a, b, eps),
            OrderKind::Hr => hr_le(a, b, eps),
            OrderKind::Lr => lr_le(a, b, eps),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "st" | "usual" | "stochastic" => Ok(OrderKind::St),
            "hr" | "hazard" | "hazard-rate" => Ok(OrderKind::Hr),
            "lr" | "likelihood" | "likelihood-ratio" => Ok(OrderKind::Lr),
            other => Err(Error::InvalidArgument(format!("unknown order `{other}`"))),
        }
    }
}

/// Arithmetic needed by the predicates. Implemented for `f64` and for `i64`,
/// the latter giving exact comparisons on integer lattices.
pub trait Scalar: Copy + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {}

impl Scalar for f64 {}
impl Scalar for i64 {}

/// `T_i(a) T_j(b) >= T_j(a) T_i(b) - eps` for all `i < j`.
#[inline]
pub fn hr_le_tails<T: Scalar>(a: &[T], b: &[T], eps: T) -> bool {
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            if a[i] * b[j] < a[j] * b[i] - eps {
                return false;
            }
        }
    }
    true
}

/// `T_k(a) <= T_k(b) + eps` for `k >= 2`.
#[inline]
pub fn st_le_tails<T: Scalar>(a: &[T], b: &[T], eps: T) -> bool {
    a.iter().zip(b).skip(1).all(|(&x, &y)| x <= y + eps)
}

/// `b_i a_j <= a_i b_j + eps` for all `i < j`.
#[inline]
pub fn lr_le_coords<T: Scalar>(a: &[T], b: &[T], eps: T) -> bool {
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            if b[i] * a[j] > a[i] * b[j] + eps {
                return false;
            }
        }
    }
    true
}

pub fn hr_le(a: &SimplexPoint, b: &SimplexPoint, eps: f64) -> Result<bool> {
    a.same_shape(b)?;
    Ok(hr_le_tails(
        a.tail_sums().as_slice(),
        b.tail_sums().as_slice(),
        eps,
    ))
}

pub fn st_le(a: &SimplexPoint, b: &SimplexPoint, eps: f64) -> Result<bool> {
    a.same_shape(b)?;
    Ok(st_le_tails(
        a.tail_sums().as_slice(),
        b.tail_sums().as_slice(),
        eps,
    ))
}

pub fn lr_le(a: &SimplexPoint, b: &SimplexPoint, eps: f64) -> Result<bool> {
    a.same_shape(b)?;
    Ok(lr_le_coords(a.coords(), b.coords(), eps))
}

/// Outcome of comparing two points in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClassification {
    LessEq,
    GreaterEq,
    Equal,
    Incomparable,
}

impl PairClassification {
    pub fn from_directions(le: bool, ge: bool) -> Self {
        match (le, ge) {
            (true, true) => PairClassification::Equal,
            (true, false) => PairClassification::LessEq,
            (false, true) => PairClassification::GreaterEq,
            (false, false) => PairClassification::Incomparable,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PairClassification::LessEq => "less_eq",
            PairClassification::GreaterEq => "greater_eq",
            PairClassification::Equal => "equal",
            PairClassification::Incomparable => "incomparable",
        }
    }

    pub fn is_comparable(self) -> bool {
        self != PairClassification::Incomparable
    }
}

impl fmt::Display for PairClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify_pair(
    a: &SimplexPoint,
    b: &SimplexPoint,
    order: OrderKind,
    eps: f64,
) -> Result<PairClassification> {
    a.same_shape(b)?;
    let (ta, tb) = (a.tail_sums(), b.tail_sums());
    let le = order.le_raw(a.coords(), ta.as_slice(), b.coords(), tb.as_slice(), eps);
    let ge = order.le_raw(b.coords(), tb.as_slice(), a.coords(), ta.as_slice(), eps);
    Ok(PairClassification::from_directions(le, ge))
}

/// Pair of points one dimension lower produced by [`hr_reduce`].
#[derive(Debug, Clone, PartialEq)]
pub enum ReducedPair {
    Pair {
        a: SimplexPoint,
        b: SimplexPoint,
    },
    /// The reduced `a` or the reduced scale would be zero: `a` carries all its
    /// mass on the first coordinate, or `b` does.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HrReduction {
    /// `b_1 <= a_1`.
    pub side_condition: bool,
    pub reduced: ReducedPair,
}

impl HrReduction {
    /// Verdict on `a <= b` (hazard rate) obtained through the reduction.
    ///
    /// In the degenerate cases the side condition alone decides: if `a` is the
    /// order's minimum `(u, 0, ..., 0)` it holds trivially, and if `b` is, it
    /// holds iff `a_1 = u`, which is what `b_1 <= a_1` reads.
    pub fn verdict(&self, eps: f64) -> bool {
        match &self.reduced {
            ReducedPair::Degenerate => self.side_condition,
            ReducedPair::Pair { a, b } => {
                self.side_condition && hr_le_tails(a.tail_sums().as_slice(), b.tail_sums().as_slice(), eps)
            }
        }
    }
}

/// Drops the first coordinate: `a <= b` (hazard rate) iff `b_1 <= a_1` and
/// `(a_2/v, ..., a_n/v) <= (b_2, ..., b_n)` in the simplex of scale `u - b_1`,
/// where `v = (a_2 + ... + a_n) / (u - b_1)`.
pub fn hr_reduce(a: &SimplexPoint, b: &SimplexPoint) -> Result<HrReduction> {
    a.same_shape(b)?;
    let n = a.dim();
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    let u = a.scale();
    if b.coords()[n - 1] >= u {
        return Err(Error::ScaleExhausted);
    }
    let side_condition = b.coords()[0] <= a.coords()[0];

    let b_rest = b.coords()[1..].to_vec();
    let reduced_scale = compensated_sum(&b_rest);
    let a_rest_mass = compensated_sum(&a.coords()[1..]);
    if reduced_scale <= 0.0 || a_rest_mass <= 0.0 {
        return Ok(HrReduction {
            side_condition,
            reduced: ReducedPair::Degenerate,
        });
    }
    let v = a_rest_mass / reduced_scale;
    let a_rest = a.coords()[1..].iter().map(|&x| x / v).collect();
    Ok(HrReduction {
        side_condition,
        reduced: ReducedPair::Pair {
            a: SimplexPoint::from_trusted(a_rest, reduced_scale),
            b: SimplexPoint::from_trusted(b_rest, reduced_scale),
        },
    })
}

/// Tail sums of both operands, shape-checked. Handy for callers that evaluate
/// several orders on the same pair.
pub fn paired_tails(a: &SimplexPoint, b: &SimplexPoint) -> Result<(TailSums, TailSums)> {
    a.same_shape(b)?;
    Ok((a.tail_sums(), b.tail_sums()))
}
