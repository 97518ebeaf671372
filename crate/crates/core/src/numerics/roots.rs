//! Bracketed root finding by bisection. Deterministic, no derivatives.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Finds a root of `f` in `[a, b]` by bisection to absolute tolerance `tol`.
///
/// Requires a sign change on the bracket.
pub fn bisect<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> Result<T> {
    let mut lo = a;
    let mut hi = b;
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == T::zero() {
        return Ok(lo);
    }
    if fhi == T::zero() {
        return Ok(hi);
    }
    if (flo > T::zero()) == (fhi > T::zero()) {
        return Err(Error::BracketFailure {
            a: lo.as_f64(),
            b: hi.as_f64(),
            fa: flo.as_f64(),
            fb: fhi.as_f64(),
        });
    }
    // 200 halvings are enough for any representable tolerance
    for _ in 0..200 {
        let mid = T::of(0.5) * (lo + hi);
        if (hi - lo).abs() <= tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid == T::zero() {
            return Ok(mid);
        }
        if (fmid > T::zero()) == (flo > T::zero()) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(T::of(0.5) * (lo + hi))
}
