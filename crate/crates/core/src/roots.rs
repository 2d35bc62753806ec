//! Bracketed bisection.

use crate::error::{Error, Result};
use crate::tol;

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// Stops when the bracket is narrower than `tol * max(1, |mid|)` or after
/// [`tol::MAX_BISECT`] halvings.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, rtol: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo.signum() != fhi.signum()) || flo.is_nan() || fhi.is_nan() {
        return Err(Error::NoConvergence(format!(
            "no sign change on [{lo}, {hi}] (f = {flo}, {fhi})"
        )));
    }
    for _ in 0..tol::MAX_BISECT {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= rtol * mid.abs().max(1.0) || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Locate the boundary between `pred(lo) == a` and `pred(hi) == !a`.
///
/// Returns the point on the `pred(lo)` side after bracketing to relative
/// width `rtol`.
pub fn bisect_predicate<P: FnMut(f64) -> bool>(mut pred: P, mut lo: f64, mut hi: f64, rtol: f64) -> f64 {
    let side = pred(lo);
    for _ in 0..tol::MAX_BISECT {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= rtol * mid.abs().max(f64::MIN_POSITIVE) || mid == lo || mid == hi {
            break;
        }
        if pred(mid) == side {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
