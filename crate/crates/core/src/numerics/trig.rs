//! Stable elementary-function helpers used across the crate.

use crate::scalar::Real;

/// sin(pi x) with argument reduction, accurate for large x.
pub fn sinpi<T: Real>(x: T) -> T {
    let two = T::of(2.0);
    // reduce to r in [-1, 1]
    let r = x - two * (x / two).round();
    let half = T::of(0.5);
    if r.abs() == half {
        return r.signum();
    }
    if r == T::zero() || r.abs() == T::one() {
        return T::zero();
    }
    // fold into [-1/2, 1/2] where sin(pi r) is well conditioned
    let folded = if r > half {
        T::one() - r
    } else if r < -half {
        -T::one() - r
    } else {
        r
    };
    (T::PI() * folded).sin()
}

/// cos(pi x) with argument reduction, accurate for large x.
pub fn cospi<T: Real>(x: T) -> T {
    sinpi(x + T::of(0.5))
}

/// sech(u) without overflow for any u.
pub fn sech<T: Real>(u: T) -> T {
    let e = (-u.abs()).exp();
    T::of(2.0) * e / (T::one() + e * e)
}

/// log(cosh(u)) without overflow for any u.
pub fn ln_cosh<T: Real>(u: T) -> T {
    u.abs() + (-T::of(2.0) * u.abs()).exp().ln_1p() - T::of(2.0).ln()
}

/// coth(u), u != 0.
pub fn coth<T: Real>(u: T) -> T {
    T::one() / u.tanh()
}

/// arccot on (0, inf) -> (0, pi/2).
pub fn arccot<T: Real>(x: T) -> T {
    (T::one() / x).atan()
}

/// u * coth(u) extended continuously through u = 0.
pub fn u_coth_u<T: Real>(u: T) -> T {
    if u.abs() < T::of(1e-4) {
        let u2 = u * u;
        // 1 + u^2/3 - u^4/45
        T::one() + u2 / T::of(3.0) - u2 * u2 / T::of(45.0)
    } else {
        u / u.tanh()
    }
}

/// u / sinh(u) extended continuously through u = 0, stable for large u.
pub fn u_over_sinh_u<T: Real>(u: T) -> T {
    if u.abs() < T::of(1e-4) {
        let u2 = u * u;
        T::one() / (T::one() + u2 / T::of(6.0) + u2 * u2 / T::of(120.0))
    } else if u.abs() > T::of(30.0) {
        let a = u.abs();
        T::of(2.0) * a * (-a).exp() / (T::one() - (-T::of(2.0) * a).exp())
    } else {
        u / u.sinh()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinpi_integers_and_halves() {
        assert_eq!(sinpi(3.0_f64), 0.0);
        assert_eq!(sinpi(0.5_f64), 1.0);
        assert_eq!(sinpi(1.5_f64), -1.0);
        assert!((sinpi(10000.25_f64) - (std::f64::consts::PI * 0.25).sin()).abs() < 1e-12);
    }

    #[test]
    fn cospi_matches_direct_for_moderate_args() {
        for &x in &[0.1_f64, 0.37, 2.9, -4.2] {
            assert!((cospi(x) - (std::f64::consts::PI * x).cos()).abs() < 1e-14);
        }
        assert_eq!(cospi(0.5_f64), 0.0);
    }

    #[test]
    fn sech_and_ln_cosh_do_not_overflow() {
        assert!(sech(1000.0_f64) >= 0.0);
        assert!((ln_cosh(1000.0_f64) - (1000.0 - std::f64::consts::LN_2)).abs() < 1e-12);
        assert!((sech(0.3_f64) - 1.0 / 0.3_f64.cosh()).abs() < 1e-15);
    }

    #[test]
    fn small_argument_limits() {
        assert!((u_coth_u(1e-9_f64) - 1.0).abs() < 1e-12);
        assert!((u_over_sinh_u(1e-9_f64) - 1.0).abs() < 1e-12);
        assert!((u_over_sinh_u(2.0_f64) - 2.0 / 2.0_f64.sinh()).abs() < 1e-15);
        assert!((u_over_sinh_u(40.0_f64) - 40.0 / 40.0_f64.sinh()).abs() < 1e-28);
    }
}
