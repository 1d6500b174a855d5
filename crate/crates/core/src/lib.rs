//! Stochastic orders between finite-support distributions, viewed as points of
//! the scaled probability simplex.
//!
//! The crate provides:
//!
//! * validated simplex points, tail sums and the simplex volume ([`simplex`]);
//! * the usual stochastic, hazard rate and likelihood ratio orders and the
//!   one-dimension-down reduction of the hazard rate order ([`orders`]);
//! * closed-form upper-set and comparability probabilities ([`closedform`]);
//! * seeded uniform sampling on the simplex ([`sampling`]);
//! * reproducible parallel Monte Carlo estimates ([`montecarlo`]);
//! * lattice-enumeration and quadrature oracles ([`oracle`]).

pub mod closedform;
pub mod error;
pub mod montecarlo;
pub mod oracle;
pub mod orders;
pub mod sampling;
pub mod simplex;

pub use closedform::{
    comparability_prob, hr_comparability_prob, hr_upper_prob, lr_comparability_prob, st_comparability_prob,
};
pub use error::{Error, Result};
pub use montecarlo::{
    combine_chunks, estimate_comparability, estimate_upper_prob, EstimateReport, EstimateResult, McConfig,
};
pub use oracle::{
    enumerate_compositions, lattice_comparability, quadrature_mean_upper_prob, LatticeSpec, OracleMethod,
    OracleReport,
};
pub use orders::{
    classify_pair, hr_le, hr_reduce, lr_le, st_le, HrReduction, OrderKind, PairClassification, ReducedPair,
};
pub use sampling::{rng_from_seed, sample_uniform_simplex, SeededRng, GENERATOR_NAME};
pub use simplex::{
    make_simplex_point, simplex_volume, tail_sums, FiniteDistribution, SimplexPoint, TailSums,
};
