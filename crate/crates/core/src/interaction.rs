//! The vortex-interaction matrix coupling strengths to the common wave
//! speed: construction, determinants, leading-order strengths, the n = 2
//! singular curve, and the small-height limit matrices.

use crate::error::{Error, Result};
use crate::numerics::linalg::{infinity_norm, residual_norm, Lu};
use crate::numerics::roots::bisect;
use crate::numerics::trig::arccot;
use crate::scalar::Real;
use crate::stream::VortexConfig;

/// Relative determinant tolerance below which the matrix is treated as
/// singular: `|det| <= tol * norm^n` is scale invariant under `h`.
pub const SINGULAR_DET_TOL: f64 = 1e-12;

/// Residual bound enforced on every strength solve.
pub const SOLVE_RESIDUAL_TOL: f64 = 1e-10;

/// The n x n interaction matrix for vortices at relative heights
/// `1 > theta_1 > ... > theta_n > 0` on depth `h` (entries scale as 1/h).
#[derive(Debug, Clone)]
pub struct InteractionMatrix<T> {
    entries: Vec<Vec<T>>,
    h: T,
}

impl<T: Real> InteractionMatrix<T> {
    /// Builds the matrix: diagonal `cot(pi theta_i) / (4h)`, off-diagonal
    /// `(cot(pi (theta_i+theta_j)/2) - cot(pi (theta_i-theta_j)/2)) / (4h)`.
    pub fn build(config: &VortexConfig<T>, h: T) -> Result<Self> {
        if !(h > T::zero()) {
            return Err(Error::Domain {
                what: "h",
                value: h.as_f64(),
                bounds: "(0, inf)",
            });
        }
        let n = config.n();
        let quarter_h = T::of(4.0) * h;
        let cot = |x: T| x.cos() / x.sin();
        let half = T::of(0.5);
        let mut entries = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let ti = config.theta(i);
                entries[i][j] = if i == j {
                    cot(T::PI() * ti) / quarter_h
                } else {
                    let tj = config.theta(j);
                    (cot(T::PI() * (ti + tj) * half) - cot(T::PI() * (ti - tj) * half))
                        / quarter_h
                };
            }
        }
        Ok(InteractionMatrix { entries, h })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn h(&self) -> T {
        self.h
    }

    pub fn entry(&self, i: usize, j: usize) -> T {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<T>] {
        &self.entries
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> T {
        Lu::factor(&self.entries).det()
    }

    /// Row norm floored at the natural entry scale `1/(4h)`, so the scaled
    /// singularity test stays meaningful when the matrix itself is tiny
    /// (n = 1 near the mid-depth line).
    fn norm_scale(&self) -> T {
        infinity_norm(&self.entries).max(T::one() / (T::of(4.0) * self.h))
    }

    /// Scale-invariant invertibility test: `|det| > tol * norm^n` with the
    /// row norm floored at `1/(4h)`.
    pub fn is_invertible(&self, tol: T) -> bool {
        let scale = self.norm_scale().powi(self.n() as i32);
        self.det().abs() > tol * scale
    }

    /// Leading-order strengths: the solution of `Theta gamma = 1`.
    ///
    /// Fails when the determinant is below the scaled singular tolerance or
    /// the solve residual exceeds [`SOLVE_RESIDUAL_TOL`].
    pub fn leading_strengths(&self) -> Result<Vec<T>> {
        let ones = vec![T::one(); self.n()];
        self.solve(&ones)
    }

    /// Solves `Theta x = rhs` with the singularity and residual guards.
    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>> {
        let scale = self.norm_scale().powi(self.n() as i32);
        let det = self.det();
        if det.abs() <= T::of(SINGULAR_DET_TOL) * scale {
            return Err(Error::SingularMatrix {
                det: det.as_f64(),
                tol: (T::of(SINGULAR_DET_TOL) * scale).as_f64(),
            });
        }
        let x = Lu::factor(&self.entries).solve(rhs)?;
        let rhs_norm = rhs.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        let res = residual_norm(&self.entries, &x, rhs);
        if res > T::of(SOLVE_RESIDUAL_TOL) * rhs_norm.max(T::one()) {
            return Err(Error::SingularMatrix {
                det: det.as_f64(),
                tol: res.as_f64(),
            });
        }
        Ok(x)
    }
}

/// Closed-form determinant for two vortices:
/// `(cot(pi t1) cot(pi t2) + 4 sin(pi t1) sin(pi t2)/(cos(pi t2)-cos(pi t1))^2) / (16 h^2)`.
pub fn two_vortex_det<T: Real>(theta1: T, theta2: T, h: T) -> T {
    let p1 = T::PI() * theta1;
    let p2 = T::PI() * theta2;
    let cot = |x: T| x.cos() / x.sin();
    let gap = p2.cos() - p1.cos();
    (cot(p1) * cot(p2) + T::of(4.0) * p1.sin() * p2.sin() / (gap * gap))
        / (T::of(16.0) * h * h)
}

fn curve_f<T: Real>(t: T) -> T {
    // f(t) = arccot(sqrt((cot(t)^2 + sqrt(4 - 3 cot(t)^4)) / 2))
    let c = t.cos() / t.sin();
    let c2 = c * c;
    let inner = (T::of(4.0) - T::of(3.0) * c2 * c2).sqrt();
    arccot(((c2 + inner) * T::of(0.5)).sqrt())
}

/// The unique `theta_2` making the two-vortex matrix singular, from the
/// closed parametrization `t -> ((t + f(t))/pi, (t - f(t))/pi)` of the zero
/// curve; the parameter is recovered by bisection.
pub fn singular_theta2<T: Real>(theta1: T) -> Result<T> {
    if !(theta1 > T::of(0.5) && theta1 < T::one()) {
        return Err(Error::Domain {
            what: "theta1",
            value: theta1.as_f64(),
            bounds: "(1/2, 1)",
        });
    }
    let quarter = T::PI() * T::of(0.25);
    let lo = quarter + T::of(1e-12);
    let hi = T::of(3.0) * quarter - T::of(1e-12);
    let t = bisect(
        |t| (t + curve_f(t)) / T::PI() - theta1,
        lo,
        hi,
        T::of(1e-14),
    )?;
    Ok((t - curve_f(t)) / T::PI())
}

/// The same root found directly by bisecting the closed-form determinant in
/// `theta_2` over `(1e-6, theta_1 - 1e-6)`; the determinant is strictly
/// increasing there.
pub fn singular_theta2_numeric<T: Real>(theta1: T, tol: T) -> Result<T> {
    if !(theta1 > T::of(0.5) && theta1 < T::one()) {
        return Err(Error::Domain {
            what: "theta1",
            value: theta1.as_f64(),
            bounds: "(1/2, 1)",
        });
    }
    let lo = T::of(1e-6);
    let hi = theta1 - T::of(1e-6);
    bisect(|t2| two_vortex_det(theta1, t2, T::one()), lo, hi, tol)
}

/// Skew-symmetric limit matrix with off-diagonal entries
/// `4 t_i t_j / (t_i^2 - t_j^2)` for `1/2 > t_1 > ... > t_n > 0`.
pub fn small_theta_limit_matrix<T: Real>(tilde: &[T]) -> Result<Vec<Vec<T>>> {
    validate_tilde(tilde)?;
    let n = tilde.len();
    let mut b = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                b[i][j] = T::of(4.0) * tilde[i] * tilde[j]
                    / (tilde[i] * tilde[i] - tilde[j] * tilde[j]);
            }
        }
    }
    Ok(b)
}

fn validate_tilde<T: Real>(tilde: &[T]) -> Result<()> {
    if tilde.is_empty() {
        return Err(Error::InvalidConfig("empty scaled heights".into()));
    }
    if !(tilde[0] < T::of(0.5)) {
        return Err(Error::InvalidConfig(format!(
            "scaled heights must satisfy t_1 < 1/2, got {}",
            tilde[0].as_f64()
        )));
    }
    for i in 0..tilde.len() {
        if !(tilde[i] > T::zero()) || (i > 0 && !(tilde[i] < tilde[i - 1])) {
            return Err(Error::InvalidConfig(
                "scaled heights must be strictly decreasing and positive".into(),
            ));
        }
    }
    Ok(())
}

/// Deviation report for the scaled small-height limit
/// `4h diag(tan(pi theta_k)) Theta(eps tilde) -> I - B` as `eps -> 0`.
#[derive(Debug, Clone)]
pub struct ScaledLimitReport<T> {
    pub eps: Vec<T>,
    pub deviation: Vec<T>,
}

/// Measures `|| 4h diag(tan(pi theta_k)) Theta(eps tilde) - (I - B) ||_inf`
/// for each `eps` in the list. The deviations decrease towards zero.
pub fn scaled_limit_report<T: Real>(tilde: &[T], eps_list: &[T]) -> Result<ScaledLimitReport<T>> {
    let b = small_theta_limit_matrix(tilde)?;
    let n = tilde.len();
    let h = T::one(); // h cancels in 4h * Theta
    let mut deviations = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let thetas: Vec<T> = tilde.iter().map(|&t| eps * t).collect();
        let config = VortexConfig::new(thetas.clone())?;
        let theta_m = InteractionMatrix::build(&config, h)?;
        let mut worst = T::zero();
        for i in 0..n {
            let tan_i = (T::PI() * thetas[i]).tan();
            let mut row_sum = T::zero();
            for j in 0..n {
                let scaled = T::of(4.0) * h * tan_i * theta_m.entry(i, j);
                let target = if i == j { T::one() } else { -b[i][j] };
                row_sum = row_sum + (scaled - target).abs();
            }
            worst = worst.max(row_sum);
        }
        deviations.push(worst);
    }
    Ok(ScaledLimitReport {
        eps: eps_list.to_vec(),
        deviation: deviations,
    })
}

/// Finds a configuration with `|det| / norm^n < tol` by bisecting the
/// determinant sign change along the linear homotopy between the
/// positive-determinant family `theta = eps tilde` and the
/// negative-determinant family `theta_1 = 1 - eps tilde_1` (rest unchanged),
/// with `eps = 0.05` and `tilde_i = (n - i + 1) / (2 (n + 1))`.
pub fn find_singular_configuration<T: Real>(n: usize, tol: T) -> Result<VortexConfig<T>> {
    if n == 0 {
        return Err(Error::InvalidConfig("n must be at least 1".into()));
    }
    let eps = T::of(0.05);
    let tilde: Vec<T> = (0..n)
        .map(|i| T::of_usize(n - i) / (T::of(2.0) * T::of_usize(n + 1)))
        .collect();
    let start: Vec<T> = tilde.iter().map(|&t| eps * t).collect();
    let mut end = start.clone();
    end[0] = T::one() - eps * tilde[0];

    let h = T::one();
    let config_at = |s: T| -> Result<VortexConfig<T>> {
        let thetas: Vec<T> = start
            .iter()
            .zip(&end)
            .map(|(&a, &b)| a + s * (b - a))
            .collect();
        VortexConfig::new(thetas)
    };
    let scaled_det = |s: T| -> Result<(T, T)> {
        let config = config_at(s)?;
        let m = InteractionMatrix::build(&config, h)?;
        let scale = m.norm_scale().powi(n as i32);
        Ok((m.det(), m.det().abs() / scale))
    };

    let (det_lo, _) = scaled_det(T::zero())?;
    let (det_hi, _) = scaled_det(T::one())?;
    if det_lo <= T::zero() || det_hi >= T::zero() {
        let sampled = vec![det_lo.as_f64(), det_hi.as_f64()];
        return Err(Error::SearchFailure(sampled));
    }

    let mut lo = T::zero();
    let mut hi = T::one();
    for _ in 0..200 {
        let mid = T::of(0.5) * (lo + hi);
        let (det_mid, scaled) = scaled_det(mid)?;
        if scaled < tol {
            return config_at(mid);
        }
        if det_mid > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        if mid == lo && mid == hi {
            break;
        }
    }
    let (det_final, scaled) = scaled_det(T::of(0.5) * (lo + hi))?;
    if scaled < tol {
        return config_at(T::of(0.5) * (lo + hi));
    }
    Err(Error::SearchFailure(vec![det_final.as_f64()]))
}
