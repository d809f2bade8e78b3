//! The bound family: the defining function `F`, its root `z_v` (by bracketed
//! solve and by Lambert W), the exact tail bound `p_v`, the simple bound
//! `q_v`, region classification, and the small-`(mu-1)` gap diagnostic.
//!
//! Conventions. `mu = A_X/G_X > 1` is the only distributional input. For the
//! right tail `P(X/G_X >= v)` the bound is nontrivial on `v in (mu, inf)`,
//! where `z_v` is the unique root of
//! `F(z) = (v - mu) ln z + (mu - z) ln v` in `(0, 1)`; for the left tail
//! `P(X/G_X <= v)` it is nontrivial on `v in (0, 1)`, with `z_v in (mu, inf)`.
//! In both cases `p_v = (mu - z_v)/(v - z_v)` lies in `(0, 1)` and is
//! attained by the two-point law supported on `{v, z_v}`.

use serde::Serialize;
use thiserror::Error;

use crate::numerics::{expand_bracket_upward, find_root_bracketed, Bracket, NumericsError};
use crate::special::{lambert_w, v_minus_1_minus_ln_v, SpecialError, WBranch};

// Above this value of mu*ln(v)/(v-mu) the root is taken in closed form:
// z = exp(-mu ln v/(v-mu)) then satisfies |F(z)| = z*ln v <= ~1e-12 and is
// within relative 1e-14 of the true root.
const SHORTCUT_EXPONENT: f64 = 36.0;

#[derive(Debug, Error, PartialEq)]
pub enum BoundError {
    #[error("mean ratio must be a finite real > 1, got {0}")]
    InvalidMeanRatio(f64),
    #[error("v={v} is outside the nontrivial region (0,1) U ({mu}, inf)")]
    Region { mu: f64, v: f64 },
    #[error("{what}: argument {arg} out of domain")]
    Domain { what: &'static str, arg: f64 },
    #[error("v is too close to the degenerate boundary for a representable root")]
    NearDegenerate,
    #[error("q_v = 1 here; the gap diagnostic requires q_v < 1")]
    QNotBelowOne,
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Validated ratio `mu = A_X/G_X` of arithmetic to geometric mean.
///
/// Strictly greater than 1: equality would mean an a.s. constant variable,
/// for which the bounds degenerate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct MeanRatio(f64);

impl MeanRatio {
    pub fn new(mu: f64) -> Result<Self, BoundError> {
        if mu.is_finite() && mu > 1.0 {
            Ok(Self(mu))
        } else {
            Err(BoundError::InvalidMeanRatio(mu))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Which tail event the bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailSide {
    /// `P(X/G_X >= v)`
    Right,
    /// `P(X/G_X <= v)`
    Left,
}

/// Classification of the query point `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundRegion {
    /// The bound `p_v = (mu - z_v)/(v - z_v)` is in `(0,1)` and attained.
    Nontrivial,
    /// The supremum is 1 (right: `v <= mu`; left: `v >= 1`), not attained.
    DegenerateOne,
    /// Left tail at `v <= 0`: the variable is positive, probability 0.
    TrivialZero,
}

/// Result of [`exact_tail_bound`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExactBoundResult {
    pub region: BoundRegion,
    /// Root `z_v`, present exactly in the nontrivial region.
    pub z: Option<f64>,
    /// The bound value; `p in (0,1)` when nontrivial.
    pub p: f64,
    /// Whether a distribution with `A_X/G_X = mu` attains the bound.
    pub attained: bool,
    /// Set when the root was not representable and the bound was rounded
    /// up to the degenerate value 1.
    pub near_degenerate: bool,
}

/// `F(z) = (v - mu) ln z + (mu - z) ln v`, the function whose root is `z_v`.
pub fn root_residual(mu: MeanRatio, v: f64, z: f64) -> Result<f64, BoundError> {
    if !(v > 0.0) {
        return Err(BoundError::Domain { what: "root_residual", arg: v });
    }
    if !(z > 0.0) {
        return Err(BoundError::Domain { what: "root_residual", arg: z });
    }
    Ok((v - mu.get()) * z.ln() + (mu.get() - z) * v.ln())
}

fn check_region(mu: MeanRatio, v: f64) -> Result<(), BoundError> {
    if v > mu.get() || (v > 0.0 && v < 1.0) {
        Ok(())
    } else {
        Err(BoundError::Region { mu: mu.get(), v })
    }
}

/// The root `z_v` of `F`, by a guaranteed-bracket solve.
///
/// For `v > mu` the solve runs in `w = ln z` over the analytic bracket
/// `[-mu ln v/(v - mu), 0]` (the left endpoint follows from `F(z_v) = 0`
/// and `z_v > 0`), so roots that underflow `z`-space near `v = mu` stay
/// representable; once the bracket exponent exceeds 36 the endpoint itself
/// is the root to double precision. For `v in (0,1)` the root lies in
/// `(mu, inf)` and is bracketed by doubling from `mu`.
pub fn z_root(mu: MeanRatio, v: f64) -> Result<f64, BoundError> {
    check_region(mu, v)?;
    let m = mu.get();
    if v > m {
        let ln_v = v.ln();
        let bound = m * ln_v / (v - m);
        if bound >= SHORTCUT_EXPONENT {
            return Ok((-bound).exp());
        }
        let g = |w: f64| (v - m) * w + (m - w.exp()) * ln_v;
        let w_lo = -(bound * (1.0 + 1e-9) + 1e-6);
        let bracket = Bracket::from_fn(g, w_lo, 0.0)?;
        let res = find_root_bracketed(g, bracket, 0.0, 0.0)?;
        Ok(res.root.exp())
    } else {
        let f = |z: f64| (v - m) * z.ln() + (m - z) * v.ln();
        let bracket = expand_bracket_upward(f, m, 2.0).map_err(|e| match e {
            NumericsError::NoSignChangeWithinCap { .. } => BoundError::NearDegenerate,
            other => BoundError::Numerics(other),
        })?;
        let res = find_root_bracketed(f, bracket, 0.0, 0.0)?;
        Ok(res.root)
    }
}

/// `hat z_v = (v - mu)/ln v`, the Lambert-W scale factor; positive on both
/// nontrivial regions.
pub fn hat_z(mu: MeanRatio, v: f64) -> Result<f64, BoundError> {
    check_region(mu, v)?;
    Ok((v - mu.get()) / v.ln())
}

/// `z_v` via the closed form `-hat z_v * W_k(-exp(-mu/hat z_v)/hat z_v)`,
/// principal branch for `v > mu`, branch -1 for `v in (0,1)`.
///
/// Cross-check path: agrees with [`z_root`] to `1e-9 * max(1, z)`.
pub fn z_lambert(mu: MeanRatio, v: f64) -> Result<f64, BoundError> {
    let hz = hat_z(mu, v)?;
    let u = -(-mu.get() / hz).exp() / hz;
    let branch = if v > mu.get() { WBranch::Principal } else { WBranch::MinusOne };
    let w = lambert_w(branch, u)?;
    Ok(-hz * w)
}

/// The exact tail bound `sup P(X/G_X >= v)` (right) or `sup P(X/G_X <= v)`
/// (left) over positive `X` with `A_X/G_X <= mu`.
///
/// Total over finite `v`: outside the nontrivial region the supremum is 1
/// (not attained) or, for the left tail at `v <= 0`, zero.
pub fn exact_tail_bound(mu: MeanRatio, v: f64, side: TailSide) -> ExactBoundResult {
    assert!(v.is_finite(), "threshold v must be finite");
    let m = mu.get();
    let degenerate = |flag: bool| ExactBoundResult {
        region: BoundRegion::DegenerateOne,
        z: None,
        p: 1.0,
        attained: false,
        near_degenerate: flag,
    };
    match side {
        TailSide::Right => {
            if v <= m {
                return degenerate(false);
            }
            let z = z_root(mu, v).unwrap_or_else(|_| {
                // conservative fallback: any z <= z_v still yields a valid
                // upper bound since p is decreasing in z
                (-(m * v.ln() / (v - m))).exp()
            });
            ExactBoundResult {
                region: BoundRegion::Nontrivial,
                z: Some(z),
                p: (m - z) / (v - z),
                attained: true,
                near_degenerate: false,
            }
        }
        TailSide::Left => {
            if v <= 0.0 {
                return ExactBoundResult {
                    region: BoundRegion::TrivialZero,
                    z: None,
                    p: 0.0,
                    attained: true,
                    near_degenerate: false,
                };
            }
            if v >= 1.0 {
                return degenerate(false);
            }
            match z_root(mu, v) {
                Ok(z) => ExactBoundResult {
                    region: BoundRegion::Nontrivial,
                    z: Some(z),
                    p: (m - z) / (v - z),
                    attained: true,
                    near_degenerate: false,
                },
                Err(_) => degenerate(true),
            }
        }
    }
}

/// The simple closed-form bound `q_v = min(1, (mu-1)/(v-1-ln v))`, with
/// `q_1 = 1`. Valid on `v in [1, inf)` for the right tail and `v in (0, mu]`
/// for the left tail.
pub fn simple_tail_bound(mu: MeanRatio, v: f64, side: TailSide) -> Result<f64, BoundError> {
    let ok = match side {
        TailSide::Right => v >= 1.0 && v.is_finite(),
        TailSide::Left => v > 0.0 && v <= mu.get(),
    };
    if !ok {
        return Err(BoundError::Region { mu: mu.get(), v });
    }
    if v == 1.0 {
        return Ok(1.0);
    }
    let den = v_minus_1_minus_ln_v(v)?;
    Ok(((mu.get() - 1.0) / den).min(1.0))
}

/// `p_v - q_v/(1+q_v)`, the diagnostic that vanishes as `mu, v -> 1`
/// jointly with `q_v < 1`.
pub fn limit_gap(mu: MeanRatio, v: f64, side: TailSide) -> Result<f64, BoundError> {
    let res = exact_tail_bound(mu, v, side);
    if res.region != BoundRegion::Nontrivial {
        return Err(BoundError::Region { mu: mu.get(), v });
    }
    let q = simple_tail_bound(mu, v, side)?;
    if q >= 1.0 {
        return Err(BoundError::QNotBelowOne);
    }
    Ok(res.p - q / (1.0 + q))
}

/// Right-tail exact bound with `mu` and `v` given through their logarithms,
/// for the exponential-moment applications where `e^{ln mu}` or `e^{ln v}`
/// can overflow or round to 1.
///
/// Returns 1 when `ln_v <= ln_mu` (outside the nontrivial region).
pub(crate) fn exact_right_bound_from_logs(ln_mu: f64, ln_v: f64) -> f64 {
    if !(ln_v > ln_mu) || !(ln_mu > 0.0) {
        return 1.0;
    }
    if ln_mu <= 500.0 && ln_v <= 500.0 {
        let mu_val = ln_mu.exp();
        if mu_val > 1.0 {
            let mu = MeanRatio::new(mu_val).expect("exp of positive log exceeds 1");
            return exact_tail_bound(mu, ln_v.exp(), TailSide::Right).p;
        }
        // ln_mu below one ulp of 1: fall through to the scaled solve
    }
    // Scaled equation in w = ln z: (1 - e^{M-L}) w + (e^{M-L} - e^{w-L}) L = 0,
    // which is F(e^w)/v. Evaluated cancellation-free on both ends of the
    // magnitude range.
    let (m_ln, l_ln) = (ln_mu, ln_v);
    let a = -(m_ln - l_ln).exp_m1(); // 1 - mu/v, in (0, 1)
    let ghat = |w: f64| {
        if l_ln >= 1.0 {
            a * w + ((m_ln - l_ln).exp() - (w - l_ln).exp()) * l_ln
        } else {
            a * w + (m_ln.exp_m1() - w.exp_m1()) * (-l_ln).exp() * l_ln
        }
    };
    let bound = l_ln * (m_ln - l_ln).exp() / a;
    let w = if bound >= SHORTCUT_EXPONENT {
        -bound
    } else {
        let w_lo = -(bound * (1.0 + 1e-9) + 1e-6);
        match Bracket::from_fn(ghat, w_lo, 0.0)
            .and_then(|br| find_root_bracketed(ghat, br, 0.0, 0.0))
        {
            Ok(res) => res.root,
            Err(_) => -bound, // conservative: p is decreasing in z
        }
    };
    // p = e^{M-L} (1 - e^{w-M}) / (1 - e^{w-L})
    (m_ln - l_ln).exp() * (w - m_ln).exp_m1() / (w - l_ln).exp_m1()
}
