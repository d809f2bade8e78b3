//! Exact tail bounds for a positive random variable `X` in terms of the
//! ratio `mu = A_X / G_X` of its arithmetic and geometric means.
//!
//! For `mu > 1` and a threshold `v`, the exact (attained) bound on
//! `P(X/G_X >= v)` (right tail, `v > mu`) or `P(X/G_X <= v)` (left tail,
//! `v < 1`) is `p_v = (mu - z_v)/(v - z_v)`, where `z_v` is the unique root
//! of `(v - mu) ln z + (mu - z) ln v = 0` on the side of 1 opposite to `v`.
//! A closed-form simple bound `q_v = min(1, (mu-1)/(v-1-ln v))` and a
//! Lambert-W expression for `z_v` are provided alongside, together with the
//! derived improvements of the Markov, sub-Gaussian and Bennett-Hoeffding
//! inequalities and a self-contained verification layer (extremal two-point
//! witnesses, convex dual certificates, randomized feasibility oracles).
//!
//! Modules:
//! - [`numerics`]: bracketed root finding and scalar minimization.
//! - [`special`]: real Lambert-W branches and stable elementary helpers.
//! - [`bounds`]: the bound family itself (`z_v`, `p_v`, `q_v`, regions).
//! - [`applications`]: Markov/Cantelli/Chebyshev baselines and the improved
//!   exponential bounds `P_1..P_3`, `P_opt`, `P_BH`, `P_BH,1`.
//! - [`verify`]: witnesses, certificates and Monte-Carlo oracles.
//!
//! ```
//! use amgm_tails::{exact_tail_bound, MeanRatio, TailSide};
//!
//! // A positive variable whose arithmetic mean is twice its geometric mean
//! // exceeds 4x its geometric mean with probability at most 0.458.
//! let mu = MeanRatio::new(2.0).unwrap();
//! let bound = exact_tail_bound(mu, 4.0, TailSide::Right);
//! assert!((bound.p - 0.4580082498324861).abs() < 1e-12);
//!
//! // ...and the bound is attained by a two-point distribution:
//! use amgm_tails::verify::{extremal_distribution, tail_prob};
//! let witness = extremal_distribution(mu, 4.0, TailSide::Right).unwrap();
//! assert_eq!(tail_prob(&witness, 4.0, TailSide::Right), bound.p);
//! ```

// Negated comparisons like `!(x > 0.0)` are used on purpose: they reject
// NaN along with out-of-domain values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod applications;
pub mod bounds;
pub mod numerics;
pub mod special;
pub mod verify;

pub use bounds::{
    exact_tail_bound, simple_tail_bound, BoundRegion, ExactBoundResult, MeanRatio, TailSide,
};
pub use verify::{DiscreteDistribution, OracleReport};
