//! Independent finite-difference oracle for the flat-strip harmonic
//! extension: a 5-point Laplacian on a truncated strip, solved exactly by
//! discrete sine modes in x and a tridiagonal solve in y.
//!
//! This route shares nothing with the spectral multiplier evaluator in
//! `bifurcation`: truncated domain, discrete operator, grid derivatives.

use crate::error::{Error, Result};
use crate::numerics::spline::CubicSpline;
use crate::profile::Profile;
use crate::scalar::Real;
use crate::stream::PhysicalParams;

/// Vertical derivative at `(0, -(1-theta_eval) h)` of the discrete harmonic
/// extension of `zeta` on `[-X, X] x [-h, 0]` (Dirichlet: `zeta` on top,
/// zero on bottom and sides), with `nx` intervals in x and `ny` in y.
///
/// Requirements: `nx` even (so `x = 0` is a grid line) and
/// `theta_eval * ny` within 1e-9 of an integer at least 2 from the ends
/// (so the evaluation height is a grid line with stencil room).
pub fn fd_extension_dy<T: Real>(
    zeta: &Profile<T>,
    params: &PhysicalParams<T>,
    theta_eval: T,
    nx: usize,
    ny: usize,
) -> Result<T> {
    if nx % 2 != 0 || nx < 8 || ny < 8 {
        return Err(Error::InvalidConfig(
            "fd oracle needs even nx >= 8 and ny >= 8".into(),
        ));
    }
    let h = params.h();
    let j_eval_real = theta_eval * T::of_usize(ny);
    let j_eval = j_eval_real.round().as_f64() as usize;
    if (j_eval_real - j_eval_real.round()).abs() > T::of(1e-9) || j_eval < 2 || j_eval > ny - 2 {
        return Err(Error::InvalidConfig(format!(
            "theta_eval = {} does not land on an interior y grid line of ny = {ny}",
            theta_eval.as_f64()
        )));
    }

    let x_extent = zeta.x_max();
    let dx = T::of(2.0) * x_extent / T::of_usize(nx);
    let dy = h / T::of_usize(ny);

    // top boundary data at the FD x-nodes
    let spline = CubicSpline::natural(zeta.xs().to_vec(), zeta.values().to_vec());
    let top: Vec<T> = (0..=nx)
        .map(|i| spline.eval(-x_extent + dx * T::of_usize(i)))
        .collect();

    // discrete sine coefficients of the top data:
    // zeta_hat_k = (2/nx) sum_{i=1}^{nx-1} top_i sin(k pi i / nx)
    let mut coeff = vec![T::zero(); nx];
    for k in 1..nx {
        // rotation recurrence for sin(k pi i / nx)
        let angle = T::PI() * T::of_usize(k) / T::of_usize(nx);
        let (s1, c1) = (angle.sin(), angle.cos());
        let two_c = T::of(2.0) * c1;
        let mut s_prev = T::zero();
        let mut s_cur = s1;
        let mut acc = T::zero();
        for i in 1..nx {
            acc = acc + top[i] * s_cur;
            let s_next = two_c * s_cur - s_prev;
            s_prev = s_cur;
            s_cur = s_next;
        }
        coeff[k] = T::of(2.0) / T::of_usize(nx) * acc;
    }

    // per mode k: (b_{j+1} - 2 b_j + b_{j-1})/dy^2 = mu_k b_j on j = 1..ny-1
    // with b_0 = 0 (bottom), b_ny = zeta_hat_k (top);
    // mu_k = (4/dx^2) sin^2(k pi / (2 nx)) is the discrete x eigenvalue.
    // Solve each tridiagonal system by the Thomas algorithm and keep the
    // column of values at the evaluation line and its stencil neighbours.
    let i_center = nx / 2; // x = 0
    let mut dy_value = T::zero();
    let dy2 = dy * dy;
    let mut b = vec![T::zero(); ny + 1];
    for k in 1..nx {
        if coeff[k] == T::zero() {
            continue;
        }
        let s = (T::PI() * T::of_usize(k) / (T::of(2.0) * T::of_usize(nx))).sin();
        let mu = T::of(4.0) / (dx * dx) * s * s;
        // interior unknowns j = 1..ny-1: -b_{j-1} + (2 + mu dy^2) b_j - b_{j+1} = rhs
        let diag_val = T::of(2.0) + mu * dy2;
        let m = ny - 1;
        let mut cp = vec![T::zero(); m]; // modified upper coefficients
        let mut dp = vec![T::zero(); m]; // modified rhs
        for j in 0..m {
            let rhs = if j == m - 1 { coeff[k] } else { T::zero() };
            if j == 0 {
                cp[j] = -T::one() / diag_val;
                dp[j] = rhs / diag_val;
            } else {
                let denom = diag_val + cp[j - 1];
                cp[j] = -T::one() / denom;
                dp[j] = (rhs + dp[j - 1]) / denom;
            }
        }
        b[0] = T::zero();
        b[ny] = coeff[k];
        b[m] = dp[m - 1];
        for j in (1..m).rev() {
            b[j] = dp[j - 1] - cp[j - 1] * b[j + 1];
        }

        // d/dy at j_eval by the 4th-order 5-point stencil on the grid
        let stencil = (b[j_eval - 2] - T::of(8.0) * b[j_eval - 1] + T::of(8.0) * b[j_eval + 1]
            - b[j_eval + 2])
            / (T::of(12.0) * dy);
        // sine value at the center column
        let phase = (T::PI() * T::of_usize(k) * T::of_usize(i_center) / T::of_usize(nx)).sin();
        dy_value = dy_value + stencil * phase;
    }
    Ok(dy_value)
}
