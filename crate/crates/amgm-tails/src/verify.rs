//! Independent evidence that the computed bounds are correct: extremal
//! two-point witnesses, convex dual certificates, and randomized oracles
//! over the feasible set `{X > 0 : A_X/G_X <= mu}`.
//!
//! Nothing here trusts the root path it is checking: the two-point search
//! recovers the optimum from the mean constraints alone, the certificates
//! are verified pointwise, and the sampler produces arbitrary feasible
//! distributions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{exact_tail_bound, z_root, BoundError, BoundRegion, MeanRatio, TailSide};
use crate::numerics::{find_root_bracketed, Bracket};
use crate::special::{h_convex, SpecialError};

/// Absolute slack allowed when comparing an observed tail to the bound.
pub const ORACLE_TOLERANCE: f64 = 1e-12;

/// Number of atoms in each randomly sampled feasible distribution.
const ORACLE_ATOMS: usize = 5;

/// Rejection-sampling cap for the feasible generator.
const GENERATION_CAP: u32 = 10_000;

#[derive(Debug, Error, PartialEq)]
pub enum VerifyError {
    #[error("invalid discrete distribution: {0}")]
    InvalidDistribution(&'static str),
    #[error("v={v} is outside the nontrivial region for mu={mu}")]
    Region { mu: f64, v: f64 },
    #[error("feasible sampler failed after {tries} attempts")]
    GenerationFailure { tries: u32 },
    #[error("extremal witness atom z_v is not representable at this (mu, v)")]
    WitnessUnrepresentable,
    #[error("{0}")]
    Precondition(&'static str),
    #[error("{what}: argument {arg} out of domain")]
    Domain { what: &'static str, arg: f64 },
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// A finitely supported positive distribution: atoms `x_i > 0` with
/// probabilities summing to 1 (within 1e-12).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    atoms: Vec<f64>,
    probs: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(atoms: Vec<f64>, probs: Vec<f64>) -> Result<Self, VerifyError> {
        if atoms.len() != probs.len() {
            return Err(VerifyError::InvalidDistribution("atom/probability length mismatch"));
        }
        if atoms.is_empty() {
            return Err(VerifyError::InvalidDistribution("empty support"));
        }
        if !atoms.iter().all(|&x| x > 0.0 && x.is_finite()) {
            return Err(VerifyError::InvalidDistribution("atoms must be positive and finite"));
        }
        if !probs.iter().all(|&p| p >= 0.0 && p.is_finite()) {
            return Err(VerifyError::InvalidDistribution("probabilities must be nonnegative"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(VerifyError::InvalidDistribution("probabilities must sum to 1"));
        }
        Ok(Self { atoms, probs })
    }

    pub fn uniform(atoms: Vec<f64>) -> Result<Self, VerifyError> {
        let n = atoms.len();
        if n == 0 {
            return Err(VerifyError::InvalidDistribution("empty support"));
        }
        let p = 1.0 / n as f64;
        Self::new(atoms, vec![p; n])
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// `A_X = E X`.
pub fn arithmetic_mean(d: &DiscreteDistribution) -> f64 {
    d.atoms.iter().zip(&d.probs).map(|(x, p)| p * x).sum()
}

/// `G_X = exp(E ln X)`; the n-th root of the product in the uniform case.
pub fn geometric_mean(d: &DiscreteDistribution) -> f64 {
    let log_mean: f64 = d.atoms.iter().zip(&d.probs).map(|(x, p)| p * x.ln()).sum();
    log_mean.exp()
}

/// `P(X/G_X >= v)` (right, inclusive) or `P(X/G_X <= v)` (left, inclusive),
/// with `G_X` recomputed from the distribution.
///
/// Atoms within a few ulps of the threshold count as at the threshold:
/// the normalization itself carries ulp-level rounding, and an atom placed
/// exactly at `v` must not be lost to it.
pub fn tail_prob(d: &DiscreteDistribution, v: f64, side: TailSide) -> f64 {
    let g = geometric_mean(d);
    let slack = 4.0 * f64::EPSILON * v.abs();
    d.atoms
        .iter()
        .zip(&d.probs)
        .filter(|(x, _)| match side {
            TailSide::Right => *x / g >= v - slack,
            TailSide::Left => *x / g <= v + slack,
        })
        .map(|(_, p)| p)
        .sum()
}

fn check_nontrivial(mu: MeanRatio, v: f64, side: TailSide) -> Result<(), VerifyError> {
    let ok = match side {
        TailSide::Right => v > mu.get(),
        TailSide::Left => v > 0.0 && v < 1.0,
    };
    if ok {
        Ok(())
    } else {
        Err(VerifyError::Region { mu: mu.get(), v })
    }
}

/// The two-point law attaining the exact bound: atoms `{v, z_v}` with
/// probabilities `{p_v, 1 - p_v}`. Its arithmetic mean is `mu` and its
/// geometric mean is 1, both to 1e-10; its tail probability at `v` is
/// exactly `p_v`.
///
/// Errors with [`VerifyError::WitnessUnrepresentable`] when `z_v` falls
/// below the smallest positive double (possible for `v` extremely close
/// to the degenerate boundary).
pub fn extremal_distribution(
    mu: MeanRatio,
    v: f64,
    side: TailSide,
) -> Result<DiscreteDistribution, VerifyError> {
    check_nontrivial(mu, v, side)?;
    let z = z_root(mu, v)?;
    if z <= 0.0 {
        return Err(VerifyError::WitnessUnrepresentable);
    }
    let p = (mu.get() - z) / (v - z);
    let d = DiscreteDistribution::new(vec![v, z], vec![p, 1.0 - p])?;
    let a_err = (arithmetic_mean(&d) - mu.get()).abs();
    let g_err = geometric_mean(&d).ln().abs();
    if a_err > 1e-10 || g_err > 1e-10 {
        return Err(VerifyError::WitnessUnrepresentable);
    }
    Ok(d)
}

/// The convex function `g(x) = a x - b ln x + c` that pins the bound:
/// `g(z) = g'(z) = 0`, `g(v) = 1`, and `g` dominates the tail indicator
/// when `z` is on the correct side of `v`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CertificateCoefficients {
    pub a: f64,
    pub b_coef: f64,
    pub c_coef: f64,
    pub z: f64,
    pub v: f64,
}

impl CertificateCoefficients {
    /// `g(x) = a x - b ln x + c`.
    pub fn g(&self, x: f64) -> f64 {
        self.a * x - self.b_coef * x.ln() + self.c_coef
    }

    /// `g'(x) = a - b/x`.
    pub fn g_prime(&self, x: f64) -> f64 {
        self.a - self.b_coef / x
    }
}

/// Builds the dual certificate from a root candidate:
/// `a = (1/v)/h(z/v)`, `b = a z`, `c = a z ln(z/e)` with
/// `h(r) = 1 - r + r ln r`.
pub fn dual_certificate(v: f64, z: f64) -> Result<CertificateCoefficients, VerifyError> {
    if !(v > 0.0) {
        return Err(VerifyError::Domain { what: "dual_certificate v", arg: v });
    }
    if !(z > 0.0) {
        return Err(VerifyError::Domain { what: "dual_certificate z", arg: z });
    }
    if z == v {
        return Err(VerifyError::Domain { what: "dual_certificate z (must differ from v)", arg: z });
    }
    let h = h_convex(z / v)?;
    let a = (1.0 / v) / h;
    let b_coef = a * z;
    let c_coef = a * z * (z.ln() - 1.0);
    Ok(CertificateCoefficients { a, b_coef, c_coef, z, v })
}

/// Draws a feasible distribution: `n` atoms with geometric mean 1 (log-atoms
/// are recentered) and arithmetic mean at most `mu`.
///
/// Generator (fixed, documented for reproducibility): ChaCha8 seeded with
/// `seed`; log-atoms uniform on `[-s, s]` starting from `s = sqrt(mu - 1)`;
/// probabilities are normalized unit exponentials; on rejection
/// (`A > mu`) the spread shrinks by 0.8, up to 10000 attempts.
pub fn random_feasible_distribution(
    seed: u64,
    mu: MeanRatio,
    n: usize,
) -> Result<DiscreteDistribution, VerifyError> {
    if n < 2 {
        return Err(VerifyError::Precondition("a feasible sample needs at least 2 atoms"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spread = (mu.get() - 1.0).sqrt();
    for _ in 0..GENERATION_CAP {
        let log_atoms: Vec<f64> = (0..n).map(|_| rng.random_range(-spread..spread)).collect();
        let weights: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            continue;
        }
        let probs: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let shift: f64 = log_atoms.iter().zip(&probs).map(|(x, p)| p * x).sum();
        let atoms: Vec<f64> = log_atoms.iter().map(|x| (x - shift).exp()).collect();
        let a: f64 = atoms.iter().zip(&probs).map(|(x, p)| p * x).sum();
        if a <= mu.get() {
            return DiscreteDistribution::new(atoms, probs);
        }
        spread *= 0.8;
    }
    Err(VerifyError::GenerationFailure { tries: GENERATION_CAP })
}

/// Outcome of an oracle run, serializable for reporting.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OracleReport {
    pub mu: f64,
    pub v: f64,
    pub side: TailSide,
    pub trials: u64,
    pub seed: u64,
    pub violations: u64,
    pub max_tail: f64,
    pub bound: f64,
}

/// Samples `trials` feasible distributions and checks each tail against the
/// exact bound (plus [`ORACLE_TOLERANCE`]). A sound bound reports zero
/// violations.
pub fn oracle_check(
    mu: MeanRatio,
    v: f64,
    side: TailSide,
    trials: u64,
    seed: u64,
) -> Result<OracleReport, VerifyError> {
    check_nontrivial(mu, v, side)?;
    let res = exact_tail_bound(mu, v, side);
    debug_assert_eq!(res.region, BoundRegion::Nontrivial);
    oracle_check_with_bound(mu, v, side, trials, seed, res.p)
}

/// [`oracle_check`] against a caller-supplied bound value. This is the
/// falsification hook: feeding a value below the true supremum must produce
/// violations.
pub fn oracle_check_with_bound(
    mu: MeanRatio,
    v: f64,
    side: TailSide,
    trials: u64,
    seed: u64,
    bound: f64,
) -> Result<OracleReport, VerifyError> {
    if trials == 0 {
        return Err(VerifyError::Precondition("oracle_check needs at least 1 trial"));
    }
    check_nontrivial(mu, v, side)?;
    let mut violations = 0u64;
    let mut max_tail = 0.0f64;
    for trial in 0..trials {
        let d = random_feasible_distribution(seed.wrapping_add(trial), mu, ORACLE_ATOMS)?;
        let tail = tail_prob(&d, v, side);
        if tail > bound + ORACLE_TOLERANCE {
            violations += 1;
        }
        max_tail = max_tail.max(tail);
    }
    Ok(OracleReport { mu: mu.get(), v, side, trials, seed, violations, max_tail, bound })
}

/// Given the far atom `x1`, recovers the unique two-point distribution with
/// `G = 1` and `A = mu` supported on `{x1, x2}`; returns `(p, x2)` with `p`
/// the probability of `x1`. The solve uses only the two mean constraints.
fn two_point_from_far_atom(mu: f64, x1: f64, side: TailSide) -> Option<(f64, f64)> {
    let c = x1.ln();
    let mean_gap = |xi: f64| {
        let p = xi / (xi - c);
        p * x1 + (1.0 - p) * xi.exp() - mu
    };
    let (lo, hi) = match side {
        TailSide::Right => (-700.0, -1e-14), // x2 = e^xi in (0, 1)
        TailSide::Left => (1e-14, 700.0),    // x2 in (1, inf)
    };
    let bracket = Bracket::from_fn(mean_gap, lo, hi).ok()?;
    let res = find_root_bracketed(mean_gap, bracket, 0.0, 0.0).ok()?;
    let p = res.root / (res.root - c);
    Some((p, res.root.exp()))
}

/// Brute-force supremum of [`tail_prob`] over two-point distributions with
/// `G = 1` and `A = mu`, scanning the far atom over a log grid anchored
/// at `v` (the only candidate location of the maximizer's far atom).
///
/// Matches [`exact_tail_bound`] to 1e-6 without ever solving `F`.
pub fn two_point_sup(
    mu: MeanRatio,
    v: f64,
    side: TailSide,
    grid_size: usize,
) -> Result<f64, VerifyError> {
    if grid_size == 0 {
        return Err(VerifyError::Precondition("two_point_sup needs a nonempty grid"));
    }
    check_nontrivial(mu, v, side)?;
    const SPAN: f64 = 4.0;
    let mut best = 0.0f64;
    for j in 0..grid_size {
        let x1 = match side {
            TailSide::Right => v * (SPAN * j as f64 / grid_size as f64).exp(),
            TailSide::Left => v * (-SPAN * (grid_size - 1 - j) as f64 / grid_size as f64).exp(),
        };
        let Some((p, x2)) = two_point_from_far_atom(mu.get(), x1, side) else {
            continue;
        };
        if !(0.0..=1.0).contains(&p) || !(x2 > 0.0) {
            continue;
        }
        let Ok(d) = DiscreteDistribution::new(vec![x1, x2], vec![p, 1.0 - p]) else {
            continue;
        };
        best = best.max(tail_prob(&d, v, side));
    }
    Ok(best)
}
