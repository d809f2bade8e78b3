//! Bracketed scalar root finding and one-dimensional minimization.
//!
//! Everything here is generic plumbing: pure functions of their inputs,
//! deterministic, no shared state. The root finder is a classic Brent
//! scheme (bisection with secant / inverse-quadratic acceleration), the
//! minimizer is golden-section contraction.

use thiserror::Error;

/// Default relative tolerance on the root abscissa.
pub const DEFAULT_TOL_X: f64 = 1e-13;
/// Default absolute tolerance on the residual.
pub const DEFAULT_TOL_F: f64 = 1e-12;
/// Iteration cap for [`find_root_bracketed`].
pub const MAX_ROOT_ITERATIONS: u32 = 200;
/// Cap on the number of doublings in [`expand_bracket_upward`].
pub const MAX_BRACKET_DOUBLINGS: u32 = 200;

#[derive(Debug, Error, PartialEq)]
pub enum NumericsError {
    #[error("no sign change over [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("no convergence after {0} iterations")]
    MaxIterations(u32),
    #[error("no sign change within {doublings} doublings from {start}")]
    NoSignChangeWithinCap { start: f64, doublings: u32 },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
}

/// An interval `[lo, hi]` on which a continuous function changes sign.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
}

impl Bracket {
    /// Builds a bracket from precomputed endpoint values. Requires
    /// `lo < hi` and strictly opposite signs of `f_lo`, `f_hi`.
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self, NumericsError> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(NumericsError::InvalidInterval { lo, hi });
        }
        if !(f_lo.is_finite() && f_hi.is_finite()) || !(f_lo * f_hi < 0.0) {
            return Err(NumericsError::NoSignChange { lo, hi, f_lo, f_hi });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    /// Evaluates `f` at both endpoints and builds the bracket.
    pub fn from_fn(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64) -> Result<Self, NumericsError> {
        let (f_lo, f_hi) = (f(lo), f(hi));
        Self::new(lo, hi, f_lo, f_hi)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn f_lo(&self) -> f64 {
        self.f_lo
    }

    pub fn f_hi(&self) -> f64 {
        self.f_hi
    }
}

/// Outcome of a successful root search.
#[derive(Debug, Clone, Copy)]
pub struct RootResult {
    pub root: f64,
    pub residual: f64,
    pub iterations: u32,
}

/// Brent's method on a validated bracket.
///
/// `tol_x` is relative to the current iterate; `tol_f` is absolute on the
/// residual. Termination: `|f(r)| <= tol_f`, or the bracket has contracted
/// to `tol_x` scale (with `tol_x = 0` that means down to a couple of ulps).
/// The sign change is preserved at every step, so the returned root lies in
/// the original bracket. Deterministic for fixed inputs.
pub fn find_root_bracketed(
    mut f: impl FnMut(f64) -> f64,
    bracket: Bracket,
    tol_x: f64,
    tol_f: f64,
) -> Result<RootResult, NumericsError> {
    let (mut a, mut b, mut fa, mut fb) = (bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = b - a;

    for iterations in 1..=MAX_ROOT_ITERATIONS {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol_x * b.abs();
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 || fb.abs() <= tol_f {
            return Ok(RootResult { root: b, residual: fb, iterations });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // secant / inverse quadratic step
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += if xm > 0.0 { tol1 } else { -tol1 };
        }
        fb = f(b);
    }
    Err(NumericsError::MaxIterations(MAX_ROOT_ITERATIONS))
}

/// Grows `[start, start * factor^k]` until `f` changes sign.
///
/// `f(start)` must have a definite sign and `factor > 1`. Errors with
/// [`NumericsError::NoSignChangeWithinCap`] after
/// [`MAX_BRACKET_DOUBLINGS`] expansions.
pub fn expand_bracket_upward(
    mut f: impl FnMut(f64) -> f64,
    start: f64,
    factor: f64,
) -> Result<Bracket, NumericsError> {
    assert!(factor > 1.0, "expansion factor must exceed 1");
    assert!(start > 0.0 && start.is_finite(), "start must be positive and finite");
    let f_start = f(start);
    if f_start == 0.0 || !f_start.is_finite() {
        return Err(NumericsError::NoSignChange { lo: start, hi: start, f_lo: f_start, f_hi: f_start });
    }
    let mut hi = start;
    for _ in 0..MAX_BRACKET_DOUBLINGS {
        hi *= factor;
        let mut f_hi = f(hi);
        if f_hi == 0.0 {
            // landed exactly on a root; nudge past it
            hi *= 1.0 + 1e-9;
            f_hi = f(hi);
        }
        if f_start * f_hi < 0.0 {
            return Bracket::new(start, hi, f_start, f_hi);
        }
    }
    Err(NumericsError::NoSignChangeWithinCap { start, doublings: MAX_BRACKET_DOUBLINGS })
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`.
///
/// `tol` is absolute on the argument. Returns `(argmin, f(argmin))`.
pub fn minimize_scalar(
    mut f: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<(f64, f64), NumericsError> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(NumericsError::InvalidInterval { lo, hi });
    }
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol.max(f64::EPSILON * (lo.abs() + hi.abs())) {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    Ok(if f1 < f2 { (x1, f1) } else { (x2, f2) })
}
