//! Finite-depth point-vortex stream functions, their gradients and traces,
//! and the leading-order wave-speed slope.
//!
//! The fluid occupies the strip `R x (-h, 0)` with a vortex at relative
//! height `theta` above the bottom, i.e. at `(0, -(1-theta) h)`. The stream
//! function vanishes on both the surface `y = 0` and the bottom `y = -h`,
//! which is achieved by a mirror vortex at `(0, (1-theta) h)`; evaluation
//! is therefore restricted to `y < (1-theta) h`.
//!
//! All closed forms are evaluated with `cosh` factored out, so they stay
//! finite for arbitrarily large `|x|`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::trig::sech;
use crate::scalar::Real;

/// Relative singular-exclusion radius around a vortex, in units of `h`.
pub const R_MIN_FACTOR: f64 = 1e-10;

/// A point in the 2D fluid domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    pub fn norm(&self) -> T {
        self.x.hypot(self.y)
    }

    pub fn dist(&self, other: Point2<T>) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Gravity, surface tension and depth. All strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams<T> {
    g: T,
    alpha2: T,
    h: T,
}

impl<T: Real> PhysicalParams<T> {
    pub fn new(g: T, alpha2: T, h: T) -> Result<Self> {
        for (what, v) in [("g", g), ("alpha2", alpha2), ("h", h)] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::Domain {
                    what,
                    value: v.as_f64(),
                    bounds: "(0, inf)",
                });
            }
        }
        Ok(PhysicalParams { g, alpha2, h })
    }

    /// Params with the surface tension chosen so that
    /// `m = sqrt(g) h / (pi alpha)` takes the given value.
    pub fn with_m(g: T, h: T, m: T) -> Result<Self> {
        if !(m > T::zero()) || !m.is_finite() {
            return Err(Error::Domain {
                what: "m",
                value: m.as_f64(),
                bounds: "(0, inf)",
            });
        }
        let alpha = g.sqrt() * h / (T::PI() * m);
        Self::new(g, alpha * alpha, h)
    }

    pub fn g(&self) -> T {
        self.g
    }

    pub fn alpha2(&self) -> T {
        self.alpha2
    }

    pub fn alpha(&self) -> T {
        self.alpha2.sqrt()
    }

    pub fn h(&self) -> T {
        self.h
    }

    /// The dimensionless ratio `sqrt(g) h / (pi alpha)` of geometric decay
    /// rate `pi/h` to gravity-capillary decay rate `sqrt(g)/alpha`.
    pub fn m(&self) -> T {
        self.g.sqrt() * self.h / (T::PI() * self.alpha())
    }
}

/// Vortex heights `1 > theta_1 > ... > theta_n > 0`, with optional strengths.
#[derive(Debug, Clone, PartialEq)]
pub struct VortexConfig<T> {
    thetas: Vec<T>,
    strengths: Option<Vec<T>>,
}

impl<T: Real> VortexConfig<T> {
    pub fn new(thetas: Vec<T>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::InvalidConfig("empty vortex configuration".into()));
        }
        for (i, &t) in thetas.iter().enumerate() {
            if !(t > T::zero() && t < T::one()) {
                return Err(Error::InvalidConfig(format!(
                    "theta[{i}] = {} not in (0, 1)",
                    t.as_f64()
                )));
            }
        }
        for i in 1..thetas.len() {
            if !(thetas[i] < thetas[i - 1]) {
                return Err(Error::InvalidConfig(format!(
                    "thetas not strictly decreasing at index {i}: {} >= {}",
                    thetas[i].as_f64(),
                    thetas[i - 1].as_f64()
                )));
            }
        }
        Ok(VortexConfig {
            thetas,
            strengths: None,
        })
    }

    pub fn single(theta: T) -> Result<Self> {
        Self::new(vec![theta])
    }

    pub fn with_strengths(thetas: Vec<T>, strengths: Vec<T>) -> Result<Self> {
        if strengths.len() != thetas.len() {
            return Err(Error::InvalidConfig(format!(
                "{} strengths for {} vortices",
                strengths.len(),
                thetas.len()
            )));
        }
        let mut cfg = Self::new(thetas)?;
        cfg.strengths = Some(strengths);
        Ok(cfg)
    }

    /// Returns a copy carrying the given strengths.
    pub fn strengthened(&self, strengths: Vec<T>) -> Result<Self> {
        Self::with_strengths(self.thetas.clone(), strengths)
    }

    pub fn n(&self) -> usize {
        self.thetas.len()
    }

    pub fn thetas(&self) -> &[T] {
        &self.thetas
    }

    pub fn theta(&self, i: usize) -> T {
        self.thetas[i]
    }

    pub fn strengths(&self) -> Option<&[T]> {
        self.strengths.as_deref()
    }

    /// Vortex position `(0, -(1 - theta_i) h)`.
    pub fn vortex_position(&self, i: usize, h: T) -> Point2<T> {
        Point2::new(T::zero(), -(T::one() - self.thetas[i]) * h)
    }

    /// Configuration reflected across `y = -h/2` (order preserved).
    pub fn reflected(&self) -> Self {
        VortexConfig {
            thetas: self.thetas.iter().map(|&t| T::one() - t).collect(),
            strengths: self.strengths.clone(),
        }
    }
}

fn check_theta<T: Real>(theta: T) -> Result<()> {
    if theta > T::zero() && theta < T::one() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "theta",
            value: theta.as_f64(),
            bounds: "(0, 1)",
        })
    }
}

/// Fundamental solution of the 2D Laplacian, `log(x^2 + y^2) / (4 pi)`.
pub fn newtonian_potential<T: Real>(p: Point2<T>) -> Result<T> {
    if p.x == T::zero() && p.y == T::zero() {
        return Err(Error::SingularPoint {
            index: 0,
            x: 0.0,
            y: 0.0,
        });
    }
    Ok((p.x * p.x + p.y * p.y).ln() / (T::of(4.0) * T::PI()))
}

/// Perpendicular gradient of the Newtonian potential:
/// `(-y, x) / (2 pi (x^2 + y^2))`, the free-space vortex velocity.
pub fn newtonian_gradperp<T: Real>(p: Point2<T>) -> Result<Point2<T>> {
    let r2 = p.x * p.x + p.y * p.y;
    if r2 == T::zero() {
        return Err(Error::SingularPoint {
            index: 0,
            x: 0.0,
            y: 0.0,
        });
    }
    let scale = T::of(2.0) * T::PI() * r2;
    Ok(Point2::new(-p.y / scale, p.x / scale))
}

fn check_window<T: Real>(params: &PhysicalParams<T>, theta: T, p: Point2<T>) -> Result<()> {
    check_theta(theta)?;
    let h = params.h();
    let mirror = (T::one() - theta) * h;
    if p.y < -h || p.y >= mirror {
        return Err(Error::Domain {
            what: "p.y",
            value: p.y.as_f64(),
            bounds: "[-h, (1-theta) h)",
        });
    }
    let vortex = Point2::new(T::zero(), -mirror);
    if p.dist(vortex) < T::of(R_MIN_FACTOR) * h {
        return Err(Error::SingularPoint {
            index: 0,
            x: p.x.as_f64(),
            y: p.y.as_f64(),
        });
    }
    Ok(())
}

/// Stream function of a unit vortex at `(0, -(1-theta) h)` in the strip,
/// vanishing on the surface and the bottom.
pub fn stream_function<T: Real>(params: &PhysicalParams<T>, theta: T, p: Point2<T>) -> Result<T> {
    check_window(params, theta, p)?;
    Ok(stream_function_raw(params.h(), theta, p))
}

/// The closed form without domain checks; used by the integrator where the
/// step guard already keeps points away from the singularities.
pub(crate) fn stream_function_raw<T: Real>(h: T, theta: T, p: Point2<T>) -> T {
    let s = sech(T::PI() * p.x / h);
    let a = (T::PI() * (p.y / h - theta)).cos();
    let b = (T::PI() * (p.y / h + theta)).cos();
    // log((cosh + a)/(cosh + b)) with cosh factored out
    ((a * s).ln_1p() - (b * s).ln_1p()) / (T::of(4.0) * T::PI())
}

/// Perpendicular gradient `(-Phi_y, Phi_x)` of the stream function: the
/// velocity field induced by the vortex.
pub fn stream_function_gradperp<T: Real>(
    params: &PhysicalParams<T>,
    theta: T,
    p: Point2<T>,
) -> Result<Point2<T>> {
    check_window(params, theta, p)?;
    Ok(stream_function_gradperp_raw(params.h(), theta, p))
}

pub(crate) fn stream_function_gradperp_raw<T: Real>(h: T, theta: T, p: Point2<T>) -> Point2<T> {
    let u = T::PI() * p.x / h;
    let s = sech(u);
    let t = u.tanh();
    let a = (T::PI() * (p.y / h - theta)).cos();
    let b = (T::PI() * (p.y / h + theta)).cos();
    let sa = (T::PI() * (p.y / h - theta)).sin();
    let sb = (T::PI() * (p.y / h + theta)).sin();
    let quarter_h = T::of(4.0) * h;
    // Phi_x = (pi/h)/(4 pi) [sinh/(cosh+a) - sinh/(cosh+b)]
    let phi_x = (t / (T::one() + a * s) - t / (T::one() + b * s)) / quarter_h;
    // Phi_y = (pi/h)/(4 pi) [-sin(pi(y/h-theta))/(cosh+a) + sin(pi(y/h+theta))/(cosh+b)]
    let phi_y = (-sa * s / (T::one() + a * s) + sb * s / (T::one() + b * s)) / quarter_h;
    Point2::new(-phi_y, phi_x)
}

/// Vertical derivative of the stream function on the undisturbed surface:
/// `Phi_y(x, 0) = sin(pi theta) / (2 h (cosh(pi x/h) + cos(pi theta)))`.
pub fn stream_function_dy_surface<T: Real>(params: &PhysicalParams<T>, theta: T, x: T) -> T {
    let h = params.h();
    let s = sech(T::PI() * x / h);
    let c = (T::PI() * theta).cos();
    (T::PI() * theta).sin() * s / (T::of(2.0) * h * (T::one() + c * s))
}

/// Perpendicular gradient of the regular part `Phi - Gamma(. - vortex)`
/// evaluated exactly at the vortex: `((1/4h) cot(pi theta), 0)`.
pub fn regular_gradperp_at_vortex<T: Real>(params: &PhysicalParams<T>, theta: T) -> Point2<T> {
    Point2::new(wave_speed_slope(params, theta), T::zero())
}

/// Leading-order wave speed per unit vortex strength,
/// `c_1 = cot(pi theta) / (4 h)`. Positive below the mid-depth line
/// (`theta < 1/2`), zero at `theta = 1/2`, negative above.
pub fn wave_speed_slope<T: Real>(params: &PhysicalParams<T>, theta: T) -> T {
    let pt = T::PI() * theta;
    pt.cos() / pt.sin() / (T::of(4.0) * params.h())
}

/// Weighted multi-vortex stream function `sum_j gamma^j Phi^j`.
pub fn stream_function_sum<T: Real>(
    params: &PhysicalParams<T>,
    config: &VortexConfig<T>,
    p: Point2<T>,
) -> Result<T> {
    let gammas = config
        .strengths()
        .ok_or_else(|| Error::InvalidConfig("strengths required for the weighted sum".into()))?;
    check_sum_window(params, config, p)?;
    let mut acc = T::zero();
    for (j, (&theta, &gamma)) in config.thetas().iter().zip(gammas).enumerate() {
        check_vortex_ball(params, config, j, p)?;
        acc = acc + gamma * stream_function_raw(params.h(), theta, p);
    }
    Ok(acc)
}

/// Perpendicular gradient of the weighted multi-vortex stream function.
pub fn stream_function_sum_gradperp<T: Real>(
    params: &PhysicalParams<T>,
    config: &VortexConfig<T>,
    p: Point2<T>,
) -> Result<Point2<T>> {
    let gammas = config
        .strengths()
        .ok_or_else(|| Error::InvalidConfig("strengths required for the weighted sum".into()))?;
    check_sum_window(params, config, p)?;
    let mut vx = T::zero();
    let mut vy = T::zero();
    for (j, (&theta, &gamma)) in config.thetas().iter().zip(gammas).enumerate() {
        check_vortex_ball(params, config, j, p)?;
        let v = stream_function_gradperp_raw(params.h(), theta, p);
        vx = vx + gamma * v.x;
        vy = vy + gamma * v.y;
    }
    Ok(Point2::new(vx, vy))
}

/// Surface trace of the vertical derivative, weighted by the strengths.
pub(crate) fn stream_function_sum_dy_surface<T: Real>(
    params: &PhysicalParams<T>,
    config: &VortexConfig<T>,
    x: T,
) -> T {
    let gammas = config.strengths().expect("strengths checked by callers");
    config
        .thetas()
        .iter()
        .zip(gammas)
        .fold(T::zero(), |acc, (&theta, &gamma)| {
            acc + gamma * stream_function_dy_surface(params, theta, x)
        })
}

fn check_sum_window<T: Real>(
    params: &PhysicalParams<T>,
    config: &VortexConfig<T>,
    p: Point2<T>,
) -> Result<()> {
    // the uppermost vortex has the most restrictive mirror line
    let mirror = (T::one() - config.theta(0)) * params.h();
    if p.y < -params.h() || p.y >= mirror {
        return Err(Error::Domain {
            what: "p.y",
            value: p.y.as_f64(),
            bounds: "[-h, (1-theta_1) h)",
        });
    }
    Ok(())
}

fn check_vortex_ball<T: Real>(
    params: &PhysicalParams<T>,
    config: &VortexConfig<T>,
    j: usize,
    p: Point2<T>,
) -> Result<()> {
    if p.dist(config.vortex_position(j, params.h())) < T::of(R_MIN_FACTOR) * params.h() {
        return Err(Error::SingularPoint {
            index: j,
            x: p.x.as_f64(),
            y: p.y.as_f64(),
        });
    }
    Ok(())
}

/// Conformal bijection from the strip `R x (-h, 0)` onto the unit disk
/// taking the vortex `-i (1-theta) h` to the origin:
/// `f(z) = (e^{pi (z+ih)/h} - e^{i pi theta}) / (e^{pi (z+ih)/h} - e^{-i pi theta})`.
///
/// For `x >= 0` the exponential is factored out so the map stays finite for
/// arbitrarily large `|x|`.
pub fn strip_to_disk_map<T: Real>(z: Complex<T>, theta: T, h: T) -> Complex<T> {
    let ep = Complex::from_polar(T::one(), T::PI() * theta);
    let em = ep.conj();
    let i = Complex::new(T::zero(), T::one());
    let w = (z + i * Complex::new(h, T::zero())) * Complex::new(T::PI() / h, T::zero());
    if w.re > T::zero() {
        // f = (1 - e^{i pi theta} e^{-w}) / (1 - e^{-i pi theta} e^{-w})
        let q = (-w).exp();
        let one = Complex::new(T::one(), T::zero());
        (one - ep * q) / (one - em * q)
    } else {
        let q = w.exp();
        (q - ep) / (q - em)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::diff::laplacian5;

    fn params() -> PhysicalParams<f64> {
        PhysicalParams::new(1.0, 0.05, 1.0).unwrap()
    }

    #[test]
    fn newtonian_values() {
        assert_eq!(newtonian_potential(Point2::new(1.0, 0.0)).unwrap(), 0.0);
        let g = newtonian_gradperp(Point2::new(0.0, 1.0)).unwrap();
        assert!((g.x + 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-16);
        assert_eq!(g.y, 0.0);
        assert!(newtonian_potential(Point2::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn newtonian_radial_symmetry() {
        for &(x, y) in &[(0.3, -1.2), (2.0, 0.7), (-0.4, 0.9)] {
            let a = newtonian_potential(Point2::new(x, y)).unwrap();
            let b = newtonian_potential(Point2::new(-x, -y)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn surface_and_bottom_traces_vanish() {
        let pr = params();
        for &theta in &[0.25, 0.5, 0.8] {
            for i in 0..40 {
                // log-spaced x from 1e-3 h to 20 h, plus x = 0
                let x = if i == 0 {
                    0.0
                } else {
                    1e-3 * (20.0 / 1e-3_f64).powf((i as f64 - 1.0) / 38.0)
                };
                let top = stream_function(&pr, theta, Point2::new(x, 0.0)).unwrap();
                let bot = stream_function(&pr, theta, Point2::new(x, -1.0)).unwrap();
                assert!(top.abs() < 1e-12, "top trace {top:e} at x={x}");
                assert!(bot.abs() < 1e-12, "bottom trace {bot:e} at x={x}");
            }
        }
    }

    #[test]
    fn even_in_x_odd_in_y() {
        let pr = params();
        let theta = 0.35;
        // mirrored points must stay below the mirror line (1-theta) h = 0.65
        for &(x, y) in &[(0.4, -0.3), (1.7, -0.6), (0.05, -0.5)] {
            let v = stream_function(&pr, theta, Point2::new(x, y)).unwrap();
            let vm = stream_function(&pr, theta, Point2::new(-x, y)).unwrap();
            assert_eq!(v, vm);
            // mirror through the surface (stays below the mirror line)
            let vo = stream_function(&pr, theta, Point2::new(x, -y)).unwrap();
            assert!((v + vo).abs() < 1e-15);
        }
    }

    #[test]
    fn domain_and_singularity_errors() {
        let pr = params();
        let theta = 0.3;
        // above the mirror line
        assert!(matches!(
            stream_function(&pr, theta, Point2::new(0.0, 0.71)),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            stream_function(&pr, theta, Point2::new(0.0, -1.01)),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            stream_function(&pr, theta, Point2::new(0.0, -0.7)),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn regular_gradient_special_values() {
        let pr = params();
        let r = regular_gradperp_at_vortex(&pr, 0.5);
        assert!(r.x.abs() < 1e-16 && r.y == 0.0);
        let r = regular_gradperp_at_vortex(&pr, 0.25);
        assert!((r.x - 0.25).abs() < 1e-15);
    }

    #[test]
    fn regular_gradient_is_the_vortex_limit() {
        // Limit of grad_perp Phi - grad_perp Gamma along a shrinking
        // symmetric approach to the vortex: averaging +r and -r kills the
        // odd Taylor terms, one Richardson step in r^2 kills the quadratic.
        let pr = params();
        for &theta in &[0.3, 0.62] {
            let vortex = Point2::new(0.0, -(1.0 - theta));
            let value = |r: f64| {
                let p = Point2::new(vortex.x + r, vortex.y);
                let full = stream_function_gradperp(&pr, theta, p).unwrap();
                let free =
                    newtonian_gradperp(Point2::new(p.x - vortex.x, p.y - vortex.y)).unwrap();
                (full.x - free.x, full.y - free.y)
            };
            let sym = |r: f64| {
                let (ax, ay) = value(r);
                let (bx, by) = value(-r);
                (0.5 * (ax + bx), 0.5 * (ay + by))
            };
            let r = 8e-3;
            let (x1, y1) = sym(r);
            let (x2, y2) = sym(0.5 * r);
            let ext = |v1: f64, v2: f64| (4.0 * v2 - v1) / 3.0;
            let expected = regular_gradperp_at_vortex(&pr, theta);
            assert!((ext(x1, x2) - expected.x).abs() < 1e-8);
            assert!((ext(y1, y2) - expected.y).abs() < 1e-8);
        }
    }

    #[test]
    fn wave_speed_slope_properties() {
        let pr = params();
        assert!(wave_speed_slope(&pr, 0.5).abs() < 1e-16);
        // theta and 1-theta give opposite signs, equal magnitude
        for &theta in &[0.1, 0.3, 0.45] {
            let a = wave_speed_slope(&pr, theta);
            let b = wave_speed_slope(&pr, 1.0 - theta);
            assert!((a + b).abs() < 1e-14 * a.abs().max(1.0));
            assert!(a > 0.0 && b < 0.0);
        }
        // c1 -> -1/(4 pi) + O(1/h^2) for theta = 1 - 1/h
        for &h in &[10.0, 100.0] {
            let prh = PhysicalParams::new(1.0, 0.05, h).unwrap();
            let c1 = wave_speed_slope(&prh, 1.0 - 1.0 / h);
            let gap = (c1 + 1.0 / (4.0 * std::f64::consts::PI)).abs() * h * h;
            assert!(gap < 0.5, "scaled gap {gap} at h={h}");
        }
    }

    #[test]
    fn weighted_sum_reduces_to_single() {
        let pr = params();
        let cfg = VortexConfig::with_strengths(vec![0.4], vec![1.0]).unwrap();
        let p = Point2::new(0.7, -0.25);
        let a = stream_function_sum(&pr, &cfg, p).unwrap();
        let b = stream_function(&pr, 0.4, p).unwrap();
        assert_eq!(a, b);

        let zero = VortexConfig::with_strengths(vec![0.6, 0.2], vec![0.0, 0.0]).unwrap();
        assert_eq!(stream_function_sum(&pr, &zero, p).unwrap(), 0.0);
    }

    #[test]
    fn weighted_sum_surface_trace_vanishes() {
        let pr = params();
        let cfg = VortexConfig::with_strengths(vec![0.6, 0.2], vec![1.3, -0.4]).unwrap();
        for &x in &[0.0, 0.9, 4.0] {
            let v = stream_function_sum(&pr, &cfg, Point2::new(x, 0.0)).unwrap();
            assert!(v.abs() < 1e-15);
        }
    }

    #[test]
    fn weighted_sum_names_offending_vortex() {
        let pr = params();
        let cfg = VortexConfig::with_strengths(vec![0.6, 0.2], vec![1.0, 1.0]).unwrap();
        let at_second = cfg.vortex_position(1, 1.0);
        match stream_function_sum(&pr, &cfg, at_second) {
            Err(Error::SingularPoint { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected singular point, got {other:?}"),
        }
    }

    #[test]
    fn strip_map_basics() {
        let theta = 0.3;
        let h = 1.0;
        let z0 = Complex::new(0.0, -(1.0 - theta) * h);
        assert!(strip_to_disk_map(z0, theta, h).norm() < 1e-15);
        // |f| = 1 on both strip boundaries, including far out
        for &x in &[0.0, 0.5, 3.0, 20.0, -20.0] {
            for &y in &[0.0, -h] {
                let f = strip_to_disk_map(Complex::new(x, y), theta, h);
                assert!((f.norm() - 1.0_f64).abs() < 1e-12, "|f| at ({x}, {y})");
            }
        }
    }

    #[test]
    fn strip_map_log_modulus_is_stream_function() {
        let pr = params();
        let theta = 0.3;
        for i in 0..10 {
            for j in 0..10 {
                let x = -2.0 + 4.0 * i as f64 / 9.0;
                let y = -0.95 + 0.9 * j as f64 / 9.0;
                let p = Point2::new(x, y);
                if p.dist(Point2::new(0.0, -(1.0 - theta))) < 1e-3 {
                    continue;
                }
                let lhs = strip_to_disk_map(Complex::new(x, y), theta, 1.0).norm().ln()
                    / (2.0 * std::f64::consts::PI);
                let rhs = stream_function(&pr, theta, p).unwrap();
                assert!((lhs - rhs).abs() < 1e-12, "mismatch at ({x}, {y})");
            }
        }
    }

    #[test]
    fn regular_part_is_harmonic() {
        // Richardson slope of the 5-point Laplacian is ~2 (O(step^2) stencil)
        let pr = params();
        let theta = 0.4;
        let vortex = Point2::new(0.0, -(1.0 - theta));
        let reg = |x: f64, y: f64| {
            stream_function(&pr, theta, Point2::new(x, y)).unwrap()
                - newtonian_potential(Point2::new(x - vortex.x, y - vortex.y)).unwrap()
        };
        let mut slopes = Vec::new();
        for &(x, y) in &[(0.1, -0.5), (0.4, -0.3), (-0.2, -0.8)] {
            let l1 = laplacian5(reg, x, y, 1e-2).abs();
            let l2 = laplacian5(reg, x, y, 5e-3).abs();
            slopes.push((l1 / l2).log2());
        }
        for s in slopes {
            assert!((s - 2.0).abs() < 0.3, "Richardson slope {s}");
        }
    }

    #[test]
    fn far_field_decay_rate() {
        let pr = params();
        let theta = 0.3;
        let y = -0.4;
        // fit log |Phi| on [2h, 10h]: slope should be -pi/h within 1%
        let xs: Vec<f64> = (0..9).map(|i| 2.0 + i as f64).collect();
        let logs: Vec<f64> = xs
            .iter()
            .map(|&x| {
                stream_function(&pr, theta, Point2::new(x, y))
                    .unwrap()
                    .abs()
                    .ln()
            })
            .collect();
        let n = xs.len() as f64;
        let sx: f64 = xs.iter().sum();
        let sy: f64 = logs.iter().sum();
        let sxx: f64 = xs.iter().map(|x| x * x).sum();
        let sxy: f64 = xs.iter().zip(&logs).map(|(x, y)| x * y).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let rel = (slope + std::f64::consts::PI).abs() / std::f64::consts::PI;
        assert!(rel < 0.01, "decay slope {slope}, relative gap {rel}");
    }
}
