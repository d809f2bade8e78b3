//! Real branches of Lambert's W function and cancellation-free elementary
//! helpers used throughout the bound computations.

use thiserror::Error;

/// Nearest double to `-1/e`, the branch point of the real W branches.
pub const NEG_INV_E: f64 = -0.367_879_441_171_442_33;

#[derive(Debug, Error, PartialEq)]
pub enum SpecialError {
    #[error("argument {arg} outside the domain of {what}")]
    Domain { what: &'static str, arg: f64 },
}

/// Real branch selector for [`lambert_w`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WBranch {
    /// `W_0`, with values in `[-1, inf)`, defined on `[-1/e, inf)`.
    Principal,
    /// `W_{-1}`, with values in `(-inf, -1]`, defined on `[-1/e, 0)`.
    MinusOne,
}

/// Solves `t * exp(t) = u` on the requested real branch.
///
/// Halley iteration from a branch-appropriate seed; the relative residual
/// `|t e^t - u| / max(1, |u|)` stays below 1e-13 across the domain. Inputs
/// within one ulp below `-1/e` are treated as the branch point (downstream
/// computations can round just past it).
pub fn lambert_w(branch: WBranch, u: f64) -> Result<f64, SpecialError> {
    if u.is_nan() {
        return Err(SpecialError::Domain { what: "lambert_w", arg: u });
    }
    let u = if (NEG_INV_E.next_down()..NEG_INV_E).contains(&u) {
        NEG_INV_E
    } else {
        u
    };
    match branch {
        WBranch::Principal => {
            if u < NEG_INV_E {
                return Err(SpecialError::Domain { what: "lambert_w (principal)", arg: u });
            }
            if u == NEG_INV_E {
                return Ok(-1.0);
            }
            if u == 0.0 {
                return Ok(0.0);
            }
            let seed = if u < -0.3078 {
                branch_point_series(u, 1.0)
            } else if u <= 3.0 {
                u.ln_1p()
            } else {
                let l1 = u.ln();
                let l2 = l1.ln();
                l1 - l2 + l2 / l1
            };
            Ok(halley(seed, u).max(-1.0))
        }
        WBranch::MinusOne => {
            if !(NEG_INV_E..0.0).contains(&u) {
                return Err(SpecialError::Domain { what: "lambert_w (branch -1)", arg: u });
            }
            if u == NEG_INV_E {
                return Ok(-1.0);
            }
            if u > -1e-300 {
                // w ~ ln(-u) - ln(-ln(-u)); both sides of t e^t = u are
                // below 1e-300 here, so the seed already meets the contract.
                let lg = (-u).ln();
                return Ok(lg - (-lg).ln());
            }
            let seed = if u < -0.3078 {
                branch_point_series(u, -1.0)
            } else {
                let lg = (-u).ln();
                lg - (-lg).ln()
            };
            Ok(halley(seed, u).min(-1.0))
        }
    }
}

/// Expansion of W about the branch point: `w = -1 + s*p - p^2/3 + 11 s p^3/72`
/// with `p = sqrt(2(1 + e u))`, sign `s = +1` for `W_0`, `-1` for `W_{-1}`.
fn branch_point_series(u: f64, sign: f64) -> f64 {
    let q = (2.0 * (1.0 + std::f64::consts::E * u)).max(0.0);
    let p = sign * q.sqrt();
    -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))
}

fn halley(mut w: f64, u: f64) -> f64 {
    for _ in 0..50 {
        let ew = w.exp();
        let f = w * ew - u;
        let w1 = w + 1.0;
        let denom = ew * w1 - (w + 2.0) * f / (2.0 * w1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let dw = f / denom;
        w -= dw;
        if dw.abs() <= 1e-16 * (w.abs() + 1e-300) {
            break;
        }
    }
    w
}

/// `v - 1 - ln v`, computed without cancellation near `v = 1`.
///
/// Nonnegative on `v > 0`, zero only at `v = 1`.
pub fn v_minus_1_minus_ln_v(v: f64) -> Result<f64, SpecialError> {
    if !(v > 0.0) {
        return Err(SpecialError::Domain { what: "v_minus_1_minus_ln_v", arg: v });
    }
    let d = v - 1.0;
    if d.abs() < 1e-3 {
        // sum_{k>=2} (-1)^k d^k / k
        Ok(d * d
            * (1.0 / 2.0
                + d * (-1.0 / 3.0
                    + d * (1.0 / 4.0 + d * (-1.0 / 5.0 + d * (1.0 / 6.0 + d * (-1.0 / 7.0)))))))
    } else {
        Ok(v - 1.0 - v.ln())
    }
}

/// `h(r) = 1 - r + r ln r`, the convex certificate kernel.
///
/// Stable near `r = 1`; nonnegative on `r > 0`, zero only at `r = 1`.
pub fn h_convex(r: f64) -> Result<f64, SpecialError> {
    if !(r > 0.0) {
        return Err(SpecialError::Domain { what: "h_convex", arg: r });
    }
    let d = r - 1.0;
    if d.abs() < 1e-3 {
        // sum_{k>=2} (-1)^k d^k / (k (k-1))
        Ok(d * d
            * (1.0 / 2.0
                + d * (-1.0 / 6.0
                    + d * (1.0 / 12.0
                        + d * (-1.0 / 20.0 + d * (1.0 / 30.0 + d * (-1.0 / 42.0)))))))
    } else {
        Ok(1.0 - r + r * r.ln())
    }
}
