//! First-order particle dynamics in the steady frame: the vector field
//! `grad_perp(Phi + c1 y)`, its stagnation points, fixed-step RK4
//! streamline integration, and the infinite-depth bounding orbit.

use crate::error::{Error, Result};
use crate::numerics::roots::bisect;
use crate::numerics::trig::u_coth_u;
use crate::scalar::Real;
use crate::stream::{
    stream_function_gradperp_raw, stream_function_raw, wave_speed_slope, PhysicalParams, Point2,
};

/// Near-vortex termination radius, in units of `h`.
pub const R_STOP_FACTOR: f64 = 1e-3;

/// Near-equilibrium termination: speed below this fraction of the speed at
/// the starting point.
pub const V_EQ_FACTOR: f64 = 1e-8;

/// Horizontal window: paths terminate `LeftDomain` beyond `50 h`.
pub const X_WINDOW_FACTOR: f64 = 50.0;

/// Per-step displacement guard: `|v| dt` must stay below `0.1 h`.
pub const STEP_GUARD_FACTOR: f64 = 0.1;

/// Why an integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    MaxSteps,
    LeftDomain,
    NearVortex,
    NearEquilibrium,
}

/// Time-ordered streamline with uniform step `dt`.
#[derive(Debug, Clone)]
pub struct StreamPath<T> {
    pub points: Vec<Point2<T>>,
    pub dt: T,
    pub termination: Termination,
}

impl<T: Real> StreamPath<T> {
    /// Time stamps matching `points`.
    pub fn times(&self) -> impl Iterator<Item = T> + '_ {
        let dt = self.dt;
        (0..self.points.len()).map(move |k| T::of_usize(k) * dt)
    }

    /// First index `k >= min_steps` at which the path has returned to
    /// within `tol` of its starting point, after first leaving the
    /// `3 tol` ball. `None` when the path never returns.
    pub fn first_return_step(&self, tol: T, min_steps: usize) -> Option<usize> {
        let p0 = *self.points.first()?;
        let mut escaped = false;
        for (k, p) in self.points.iter().enumerate() {
            let d = p.dist(p0);
            if d > T::of(3.0) * tol {
                escaped = true;
            }
            if escaped && k >= min_steps && d <= tol {
                return Some(k);
            }
        }
        None
    }
}

/// Steady-frame velocity `(-Phi_y - c1, Phi_x)` for unit vortex strength;
/// callers supply the sign/scale of the strength.
pub fn steady_velocity<T: Real>(
    params: &PhysicalParams<T>,
    theta: T,
    p: Point2<T>,
) -> Result<Point2<T>> {
    let gp = crate::stream::stream_function_gradperp(params, theta, p)?;
    Ok(Point2::new(gp.x - wave_speed_slope(params, theta), gp.y))
}

fn velocity_raw<T: Real>(params: &PhysicalParams<T>, theta: T, c1: T, p: Point2<T>) -> Point2<T> {
    let gp = stream_function_gradperp_raw(params.h(), theta, p);
    Point2::new(gp.x - c1, gp.y)
}

/// Stagnation points of the first-order field: two symmetric points at
/// `x = +-(h/pi) arcosh(|2 sin(pi theta) tan(pi theta) + cos(pi theta)|)`
/// on the bottom (`theta < 1/2`) or the surface (`theta > 1/2`). Empty for
/// `theta = 1/2`, where every streamline is closed.
pub fn stagnation_points<T: Real>(params: &PhysicalParams<T>, theta: T) -> Result<Vec<Point2<T>>> {
    if !(theta > T::zero() && theta < T::one()) {
        return Err(Error::Domain {
            what: "theta",
            value: theta.as_f64(),
            bounds: "(0, 1)",
        });
    }
    let half = T::of(0.5);
    if theta == half {
        return Ok(Vec::new());
    }
    let h = params.h();
    let pt = T::PI() * theta;
    let arg = (T::of(2.0) * pt.sin() * pt.tan() + pt.cos()).abs();
    if arg < T::one() {
        return Err(Error::ArcoshDomain(arg.as_f64()));
    }
    let x = h / T::PI() * arg.acosh();
    let y = if theta < half { -h } else { T::zero() };
    Ok(vec![Point2::new(-x, y), Point2::new(x, y)])
}

/// Fixed-step classical RK4 integration of the first-order particle system
/// from `p0`, with vortex-strength sign `eps_sign`.
///
/// Terminates on: step budget, leaving the strip (or the `50 h` horizontal
/// window), entering the `1e-3 h` ball around the vortex, or the speed
/// dropping below `1e-8` of its starting value. Errors out if a step would
/// move farther than `0.1 h`.
pub fn integrate_streamline<T: Real>(
    params: &PhysicalParams<T>,
    theta: T,
    p0: Point2<T>,
    eps_sign: T,
    dt: T,
    max_steps: usize,
) -> Result<StreamPath<T>> {
    let h = params.h();
    let c1 = wave_speed_slope(params, theta);
    let vortex = Point2::new(T::zero(), -(T::one() - theta) * h);
    let r_stop = T::of(R_STOP_FACTOR) * h;
    if p0.dist(vortex) <= r_stop {
        return Err(Error::SingularPoint {
            index: 0,
            x: p0.x.as_f64(),
            y: p0.y.as_f64(),
        });
    }
    let y_slack = T::of(1e-9) * h;
    let x_window = T::of(X_WINDOW_FACTOR) * h;
    let in_domain = |p: Point2<T>| -> bool {
        p.y >= -h - y_slack && p.y <= y_slack && p.x.abs() <= x_window
    };
    if !in_domain(p0) {
        return Err(Error::Domain {
            what: "p0",
            value: p0.y.as_f64(),
            bounds: "R x [-h, 0]",
        });
    }

    let field = |p: Point2<T>| -> Point2<T> {
        let v = velocity_raw(params, theta, c1, p);
        Point2::new(eps_sign * v.x, eps_sign * v.y)
    };

    let v0 = field(p0);
    let v_eq = T::of(V_EQ_FACTOR) * v0.norm();
    let guard = T::of(STEP_GUARD_FACTOR) * h;

    let mut points = vec![p0];
    let mut p = p0;
    let mut termination = Termination::MaxSteps;
    for _ in 0..max_steps {
        let k1 = field(p);
        let speed = k1.norm();
        if speed * dt > guard {
            return Err(Error::StepTooLarge {
                step: (speed * dt).as_f64(),
                limit: guard.as_f64(),
            });
        }
        if speed <= v_eq {
            termination = Termination::NearEquilibrium;
            break;
        }
        let half = T::of(0.5);
        let k2 = field(Point2::new(p.x + half * dt * k1.x, p.y + half * dt * k1.y));
        let k3 = field(Point2::new(p.x + half * dt * k2.x, p.y + half * dt * k2.y));
        let k4 = field(Point2::new(p.x + dt * k3.x, p.y + dt * k3.y));
        let sixth = dt / T::of(6.0);
        p = Point2::new(
            p.x + sixth * (k1.x + T::of(2.0) * (k2.x + k3.x) + k4.x),
            p.y + sixth * (k1.y + T::of(2.0) * (k2.y + k3.y) + k4.y),
        );
        if !in_domain(p) {
            termination = Termination::LeftDomain;
            break;
        }
        if p.dist(vortex) <= r_stop {
            points.push(p);
            termination = Termination::NearVortex;
            break;
        }
        points.push(p);
    }
    Ok(StreamPath {
        points,
        dt,
        termination,
    })
}

/// Conserved quantity of the first-order field: `Phi + c1 y`.
pub fn stream_invariant<T: Real>(params: &PhysicalParams<T>, theta: T, p: Point2<T>) -> T {
    stream_function_raw(params.h(), theta, p) + wave_speed_slope(params, theta) * p.y
}

/// Invariant level of the orbit bounding the critical layer: the value of
/// `Phi + c1 y` at the stagnation points.
pub fn critical_layer_level<T: Real>(params: &PhysicalParams<T>, theta: T) -> Result<T> {
    let pts = stagnation_points(params, theta)?;
    match pts.first() {
        Some(&p) => Ok(stream_invariant(params, theta, p)),
        None => Err(Error::Domain {
            what: "theta",
            value: theta.as_f64(),
            bounds: "(0, 1) excluding 1/2 (all orbits closed at the midline)",
        }),
    }
}

/// Half-width `x >= 0` of the critical-layer boundary at height `y`,
/// traced as the level set `Phi + c1 y = level-at-stagnation` (no closed
/// form is used). The invariant is strictly increasing in `x >= 0` at
/// fixed height, so a sign change brackets the crossing; a domain error
/// means the orbit does not reach that height.
pub fn critical_layer_half_width<T: Real>(
    params: &PhysicalParams<T>,
    theta: T,
    y: T,
) -> Result<T> {
    let h = params.h();
    if y < -h || y > T::zero() {
        return Err(Error::Domain {
            what: "y",
            value: y.as_f64(),
            bounds: "[-h, 0]",
        });
    }
    let level = critical_layer_level(params, theta)?;
    let value = |x: T| stream_invariant(params, theta, Point2::new(x, y)) - level;
    // x = 0 passes through the vortex column where the invariant dips to
    // -inf; start the bracket just off the axis
    let lo = T::of(1e-12) * h;
    let hi = stagnation_points(params, theta)?[1].x + T::of(2.0) * h;
    if value(lo) > T::zero() || value(hi) < T::zero() {
        return Err(Error::Domain {
            what: "y",
            value: y.as_f64(),
            bounds: "heights reached by the bounding orbit",
        });
    }
    bisect(value, lo, hi, T::of(1e-13) * h)
}

/// Infinite-depth stagnation points for a vortex at depth `d`:
/// `(+-sqrt(3) d, 0)`.
pub fn stagnation_points_infinite_depth<T: Real>(d: T) -> Result<(Point2<T>, Point2<T>)> {
    check_depth(d)?;
    let x = T::of(3.0).sqrt() * d;
    Ok((
        Point2::new(-x, T::zero()),
        Point2::new(x, T::zero()),
    ))
}

fn check_depth<T: Real>(d: T) -> Result<()> {
    if d > T::zero() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "d",
            value: d.as_f64(),
            bounds: "(0, inf)",
        })
    }
}

fn separatrix_radicand<T: Real>(d: T, y: T) -> T {
    // 2 d y (1 + coth(y/(2d))) - (y + d)^2, with the product written
    // through u coth(u) so the y -> 0 limit is finite
    let u = y / (T::of(2.0) * d);
    let prod = T::of(2.0) * d * y + T::of(4.0) * d * d * u_coth_u(u);
    prod - (y + d) * (y + d)
}

/// Half-width `x >= 0` of the infinite-depth bounding orbit
/// `x^2 + (y+d)^2 = 2 d y (1 + coth(y/(2d)))` at height `y in (y_min, 0]`.
pub fn separatrix_half_width<T: Real>(d: T, y: T) -> Result<T> {
    check_depth(d)?;
    let r = separatrix_radicand(d, y);
    if r < T::zero() {
        return Err(Error::Domain {
            what: "y",
            value: y.as_f64(),
            bounds: "(separatrix bottom, 0]",
        });
    }
    Ok(r.sqrt())
}

/// Lowest point of the infinite-depth bounding orbit (the radicand root
/// below the vortex), approximately `-2.0873 d`.
pub fn separatrix_min_y<T: Real>(d: T) -> Result<T> {
    check_depth(d)?;
    bisect(
        |y| separatrix_radicand(d, y),
        -T::of(3.0) * d,
        -T::of(1.5) * d,
        T::of(1e-12) * d,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> PhysicalParams<f64> {
        PhysicalParams::new(1.0, 0.05, 1.0).unwrap()
    }

    #[test]
    fn boundaries_are_nullclines() {
        let pr = params();
        for &theta in &[0.3, 0.7] {
            for &x in &[0.4, 1.5, 6.0] {
                let top = steady_velocity(&pr, theta, Point2::new(x, 0.0)).unwrap();
                let bottom = steady_velocity(&pr, theta, Point2::new(x, -1.0)).unwrap();
                assert!(top.y.abs() < 1e-15, "surface not a nullcline at {x}");
                assert!(bottom.y.abs() < 1e-15, "bottom not a nullcline at {x}");
            }
        }
    }

    #[test]
    fn velocity_vanishes_at_stagnation_points() {
        let pr = params();
        for &theta in &[0.2, 0.35, 0.65, 0.8] {
            for p in stagnation_points(&pr, theta).unwrap() {
                let v = steady_velocity(&pr, theta, p).unwrap();
                assert!(v.norm() < 1e-10, "|v| = {:e} at theta={theta}", v.norm());
            }
        }
        assert!(stagnation_points(&pr, 0.5).unwrap().is_empty());
    }

    #[test]
    fn far_field_velocity_is_uniform_drift() {
        let pr = params();
        let theta = 0.3;
        let c1 = wave_speed_slope(&pr, theta);
        let v = steady_velocity(&pr, theta, Point2::new(30.0, -0.5)).unwrap();
        assert!((v.x + c1).abs() < 1e-12 && v.y.abs() < 1e-12);
    }

    #[test]
    fn stagnation_small_theta_law() {
        // x ~ sqrt(3) h theta with error O(theta^5)
        let pr = params();
        let theta = 0.02;
        let pts = stagnation_points(&pr, theta).unwrap();
        let ratio = pts[1].x / (3.0_f64.sqrt() * theta);
        assert!((ratio - 1.0).abs() < 1e-3, "ratio {ratio}");
        assert_eq!(pts[1].y, -1.0);
    }

    #[test]
    fn stagnation_runs_off_near_midline() {
        // x grows like (h/pi) log tan(pi theta): slow but unbounded
        let pr = params();
        let mut prev = 0.0;
        for &theta in &[0.49, 0.499, 0.4999] {
            let x = stagnation_points(&pr, theta).unwrap()[1].x;
            assert!(x > prev, "not growing towards the midline");
            prev = x;
        }
        let x = stagnation_points(&pr, 0.5 - 1e-14).unwrap()[1].x;
        assert!(x > 10.0, "x = {x}");
    }

    #[test]
    fn stagnation_rotation_symmetry() {
        // theta and 1-theta give the same |x| with y swapped
        let pr = params();
        let below = stagnation_points(&pr, 0.3).unwrap();
        let above = stagnation_points(&pr, 0.7).unwrap();
        assert!((below[1].x - above[1].x).abs() < 1e-13);
        assert_eq!(below[1].y, -1.0);
        assert_eq!(above[1].y, 0.0);
    }

    #[test]
    fn closed_orbit_near_vortex() {
        let pr = params();
        let theta = 1.0 / 3.0;
        let vortex = Point2::new(0.0, -(1.0 - theta));
        let p0 = Point2::new(vortex.x + 0.05, vortex.y);
        // speed near the vortex ~ 1/(2 pi r); pick dt for ~1e-3 h steps
        let speed = steady_velocity(&pr, theta, p0).unwrap().norm();
        let dt = 1e-3 / speed;
        let path = integrate_streamline(&pr, theta, p0, 1.0, dt, 20_000).unwrap();
        let ret = path.first_return_step(1e-3, 10);
        assert!(ret.is_some(), "no return within budget ({:?})", path.termination);
    }

    #[test]
    fn stream_invariant_conserved() {
        let pr = params();
        let theta = 1.0 / 3.0;
        let p0 = Point2::new(0.3, -0.4);
        let speed = steady_velocity(&pr, theta, p0).unwrap().norm();
        let dt = 1e-3 / speed;
        let path = integrate_streamline(&pr, theta, p0, 1.0, dt, 5_000).unwrap();
        let e0 = stream_invariant(&pr, theta, p0);
        let drift = path
            .points
            .iter()
            .map(|&p| (stream_invariant(&pr, theta, p) - e0).abs())
            .fold(0.0, f64::max);
        assert!(drift < 1e-8, "stream-function drift {drift:e}");
    }

    #[test]
    fn far_particles_drift_monotonically() {
        let pr = params();
        let theta = 1.0 / 3.0;
        let c1 = wave_speed_slope(&pr, theta);
        let eq_x = stagnation_points(&pr, theta).unwrap()[1].x;
        let p0 = Point2::new(3.5 * eq_x, -0.5);
        let path = integrate_streamline(&pr, theta, p0, 1.0, 0.05, 4_000).unwrap();
        // drift direction is -sign(c1 eps)
        let dir = -(c1 * 1.0).signum();
        for w in path.points.windows(2) {
            assert!(
                ((w[1].x - w[0].x) * dir) > 0.0,
                "x not monotone in drift direction"
            );
        }
    }

    #[test]
    fn mirrored_start_gives_mirrored_path() {
        let pr = params();
        let theta = 0.4;
        let p0 = Point2::new(0.8, -0.45);
        let dt = 2e-3;
        let fwd = integrate_streamline(&pr, theta, p0, 1.0, dt, 3_000).unwrap();
        // x-mirror with reversed orientation: integrate backwards from the mirror
        let bwd = integrate_streamline(&pr, theta, Point2::new(-p0.x, p0.y), -1.0, dt, 3_000)
            .unwrap();
        for (a, b) in fwd.points.iter().zip(bwd.points.iter()) {
            assert!((a.x + b.x).abs() < 1e-9 && (a.y - b.y).abs() < 1e-9);
        }
    }

    #[test]
    fn step_guard_rejects_large_steps() {
        let pr = params();
        let theta = 1.0 / 3.0;
        let vortex = Point2::new(0.0, -(1.0 - theta));
        let p0 = Point2::new(vortex.x + 2e-3, vortex.y);
        assert!(matches!(
            integrate_streamline(&pr, theta, p0, 1.0, 1.0, 100),
            Err(Error::StepTooLarge { .. })
        ));
    }

    #[test]
    fn infinite_depth_separatrix() {
        let d = 0.7;
        // meets the surface at the stagnation points
        let x0 = separatrix_half_width(d, -1e-9 * d).unwrap();
        assert!((x0 - 3.0_f64.sqrt() * d).abs() < 1e-6);
        let (left, right) = stagnation_points_infinite_depth(d).unwrap();
        assert_eq!(right.x, 3.0_f64.sqrt() * d);
        assert_eq!(left.x, -right.x);

        // lowest point at ~ -2.0873 d
        let y_min = separatrix_min_y(d).unwrap();
        assert!((y_min / d + 2.0873).abs() < 1e-3, "y_min/d = {}", y_min / d);

        // d-scaling: the curve for 2d is the d-curve scaled by 2
        let y = -0.9 * d;
        let a = separatrix_half_width(d, y).unwrap();
        let b = separatrix_half_width(2.0 * d, 2.0 * y).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-12);

        // outside the orbit: domain error
        assert!(separatrix_half_width(d, -3.0 * d).is_err());
    }

    #[test]
    fn critical_layer_boundary_level_set() {
        let pr = params();
        let theta = 1.0 / 3.0;
        let level = critical_layer_level(&pr, theta).unwrap();
        let x_eq = stagnation_points(&pr, theta).unwrap()[1].x;

        // the boundary meets the bottom at the stagnation points
        let near_bottom = critical_layer_half_width(&pr, theta, -1.0 + 1e-9).unwrap();
        assert!((near_bottom - x_eq).abs() < 1e-3, "{near_bottom} vs {x_eq}");

        // every traced point sits on the invariant level
        for &y in &[-0.9, -0.7, -0.5] {
            let x = critical_layer_half_width(&pr, theta, y).unwrap();
            let e = stream_invariant(&pr, theta, Point2::new(x, y));
            assert!((e - level).abs() < 1e-10);
        }

        // heights the orbit does not reach are rejected
        assert!(critical_layer_half_width(&pr, theta, -0.01).is_err());
        assert!(critical_layer_level(&pr, 0.5).is_err());
    }

    #[test]
    fn critical_layer_converges_to_infinite_depth_orbit() {
        // fixed vortex depth d under h -> infinity: the finite-depth
        // boundary approaches the explicit infinite-depth curve
        let d = 1.0_f64;
        let y = -0.8;
        let exact = separatrix_half_width(d, y).unwrap();
        let mut prev_gap = f64::INFINITY;
        for &h in &[10.0, 40.0] {
            let pr = PhysicalParams::new(1.0, 0.05, h).unwrap();
            let theta = 1.0 - d / h;
            let x = critical_layer_half_width(&pr, theta, y).unwrap();
            let gap = (x - exact).abs();
            assert!(gap < prev_gap, "gap not shrinking at h={h}");
            prev_gap = gap;
        }
        assert!(prev_gap < 5e-3, "gap {prev_gap} at h=40");
    }

    #[test]
    fn finite_depth_stagnation_converges_to_infinite() {
        // fix the vortex depth d = (1 - theta) h and send h -> infinity
        let d = 1.0;
        let target = 3.0_f64.sqrt() * d;
        let mut errs = Vec::new();
        for &h in &[10.0, 100.0] {
            let pr = PhysicalParams::new(1.0, 0.05, h).unwrap();
            let theta = 1.0 - d / h;
            let pts = stagnation_points(&pr, theta).unwrap();
            errs.push(((pts[1].x - target) / target).abs());
        }
        assert!(errs[1] < errs[0], "gap not shrinking: {errs:?}");
        assert!(errs[1] < 1e-3);
    }
}
