//! Adaptive Gauss–Kronrod quadrature (G7, K15) on finite intervals.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// 15-point Kronrod abscissae (positive half, descending).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

/// 15-point Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// 7-point Gauss weights for the embedded rule (nodes XGK[1], XGK[3], XGK[5], XGK[7]).
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Quadrature outcome: value and a conservative absolute error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_error: T,
}

fn gk15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = T::of(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);

    let f_center = f(center);
    let mut kronrod = f_center * T::of(WGK[7]);
    let mut gauss = f_center * T::of(WG[3]);

    for j in 0..7 {
        let abscissa = half_len * T::of(XGK[j]);
        let f1 = f(center - abscissa);
        let f2 = f(center + abscissa);
        let sum = f1 + f2;
        kronrod = kronrod + T::of(WGK[j]) * sum;
        if j % 2 == 1 {
            gauss = gauss + T::of(WG[j / 2]) * sum;
        }
    }

    let value = kronrod * half_len;
    let err = ((kronrod - gauss) * half_len).abs();
    (value, err)
}

/// Adaptively integrates `f` over `[a, b]` to absolute tolerance `abs_tol`.
///
/// Panels are split depth-first, left to right, so the result is fully
/// deterministic. Fails with [`Error::QuadratureNonConvergence`] when the
/// accumulated error estimate of exhausted panels exceeds the target.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, abs_tol: T) -> Result<QuadResult<T>> {
    const MAX_DEPTH: u32 = 48;
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            abs_error: T::zero(),
        });
    }

    let total_len = (b - a).abs();
    let mut value = T::zero();
    let mut error = T::zero();
    // (lo, hi, depth) panels, processed left to right
    let mut stack: Vec<(T, T, u32)> = vec![(a, b, 0)];

    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, e) = gk15(&f, lo, hi);
        let local_target = abs_tol * (hi - lo).abs() / total_len;
        let floor = T::of(50.0) * T::epsilon() * v.abs();
        if e <= local_target.max(floor) || depth >= MAX_DEPTH {
            value = value + v;
            error = error + e;
        } else {
            let mid = T::of(0.5) * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }

    if error > abs_tol * T::of(4.0) {
        return Err(Error::QuadratureNonConvergence {
            estimate: error.as_f64(),
            target: abs_tol.as_f64(),
        });
    }
    Ok(QuadResult {
        value,
        abs_error: error,
    })
}

/// Fixed 7-point Gauss–Legendre rule on `[a, b]` (no error estimate).
///
/// Used for composite integration over spline knot intervals, where the
/// integrand is a cubic times a slowly oscillating factor.
pub fn gauss7<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> T {
    // 7-point Gauss-Legendre nodes (positive half) and weights
    const XG: [f64; 4] = [
        0.949107912342758524526189684047851,
        0.741531185599394439863864773280788,
        0.405845151377397166906606412076961,
        0.0,
    ];
    const W: [f64; 4] = [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ];
    let half = T::of(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let mut acc = f(center) * T::of(W[3]);
    for j in 0..3 {
        let dx = half_len * T::of(XG[j]);
        acc = acc + T::of(W[j]) * (f(center - dx) + f(center + dx));
    }
    acc * half_len
}
