//! Green's functions from conformal maps: the log-modulus values, the
//! regularized gradient at the pole, and a numerical verification harness
//! for the boundary, harmonicity, mean-value, and Neumann properties.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::diff::{complex_derivatives, one_sided_derivative2};
use crate::periodic::{halfstrip_to_disk_map, PeriodicParams};
use crate::scalar::Real;
use crate::stream::{newtonian_potential, strip_to_disk_map, Point2};

/// Boundary condition carried by a sampled boundary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    Dirichlet,
    Neumann,
}

/// A boundary sample with its inward unit normal.
#[derive(Debug, Clone, Copy)]
pub struct BoundarySample<T> {
    pub point: Complex<T>,
    pub kind: BoundaryKind,
    pub inward: Complex<T>,
}

/// A conformal map onto the (possibly slit) unit disk with the data needed
/// to verify its Green's function numerically.
pub struct ConformalMapSpec<'a, T> {
    pub name: &'static str,
    pub map: Box<dyn Fn(Complex<T>) -> Complex<T> + 'a>,
    /// Preimage of 0 (the pole of the Green's function).
    pub z0: Complex<T>,
    /// Interior sample points, clear of `z0` and the boundary by at least
    /// a few Laplacian stencil widths.
    pub interior: Vec<Complex<T>>,
    pub boundary: Vec<BoundarySample<T>>,
    /// Characteristic length used to scale stencils and test circles; the
    /// disk of this radius around `z0` must lie inside the domain.
    pub local_scale: T,
}

impl<'a, T: Real> ConformalMapSpec<'a, T> {
    /// Checks the structural invariants: `f(z0) = 0` to 1e-12 and
    /// `|f| = 1` on every Dirichlet sample to 1e-10.
    pub fn validate(&self) -> Result<()> {
        let at_pole = (self.map)(self.z0).norm();
        if at_pole > T::of(1e-12) {
            return Err(Error::InvalidConfig(format!(
                "{}: |f(z0)| = {:e}",
                self.name,
                at_pole.as_f64()
            )));
        }
        for s in &self.boundary {
            if s.kind == BoundaryKind::Dirichlet {
                let gap = ((self.map)(s.point).norm() - T::one()).abs();
                if gap > T::of(1e-10) {
                    return Err(Error::InvalidConfig(format!(
                        "{}: Dirichlet sample off the unit circle by {:e}",
                        self.name,
                        gap.as_f64()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Green's function value `log|f(z)| / (2 pi)`.
pub fn green_value<T: Real>(spec: &ConformalMapSpec<'_, T>, z: Complex<T>) -> Result<T> {
    let w = (spec.map)(z);
    if w.norm() == T::zero() {
        return Err(Error::SingularPoint {
            index: 0,
            x: z.re.as_f64(),
            y: z.im.as_f64(),
        });
    }
    Ok(w.norm().ln() / (T::of(2.0) * T::PI()))
}

/// Perpendicular gradient of the regular part at the pole, i.e. the
/// regularized vortex velocity: with the plain gradient
/// `(1/4 pi) conj(f''(z0)/f'(z0))` from the ratio `r = f''/f'`, the
/// perpendicular form is `(Im r, Re r) / (4 pi)`. Derivatives by
/// Richardson-refined central differences along the real direction with
/// step `4e-3 * local_scale`.
pub fn regularized_gradient<T: Real>(spec: &ConformalMapSpec<'_, T>) -> Result<Point2<T>> {
    let ratio = derivative_ratio(spec)?;
    let quarter_pi = T::of(4.0) * T::PI();
    Ok(Point2::new(ratio.im / quarter_pi, ratio.re / quarter_pi))
}

fn derivative_ratio<T: Real>(spec: &ConformalMapSpec<'_, T>) -> Result<Complex<T>> {
    let step = T::of(4e-3) * spec.local_scale;
    if !(step > T::zero()) {
        return Err(Error::DifferentiationStep {
            step: step.as_f64(),
            scale: spec.local_scale.as_f64(),
        });
    }
    let (d1, d2) = complex_derivatives(
        &spec.map,
        spec.z0,
        Complex::new(T::one(), T::zero()),
        step,
    );
    if d1.norm() == T::zero() {
        return Err(Error::DifferentiationStep {
            step: step.as_f64(),
            scale: spec.local_scale.as_f64(),
        });
    }
    Ok(d2 / d1)
}

/// Numerical verification report for one registered map.
#[derive(Debug, Clone, Copy)]
pub struct GreenReport<T> {
    /// `max |phi|` over the Dirichlet boundary samples.
    pub dirichlet_max: T,
    /// `max` 5-point Laplacian of `phi - Gamma(. - z0)` over the interior.
    pub laplacian_max: T,
    /// Largest mean-value-property deviation of the regular part on the
    /// test circles around `z0`.
    pub mean_value_max: T,
    /// `max |d phi / d n|` over the Neumann samples, when any exist.
    pub neumann_max: Option<T>,
}

/// Tolerances for [`verify_green`] pass/fail classification.
#[derive(Debug, Clone, Copy)]
pub struct GreenTolerances<T> {
    pub dirichlet: T,
    pub laplacian: T,
    pub mean_value: T,
    pub neumann: T,
}

impl<T: Real> Default for GreenTolerances<T> {
    fn default() -> Self {
        GreenTolerances {
            dirichlet: T::of(1e-10),
            laplacian: T::of(1e-4),
            mean_value: T::of(1e-8),
            neumann: T::of(1e-6),
        }
    }
}

impl<T: Real> GreenReport<T> {
    pub fn passes(&self, tol: &GreenTolerances<T>) -> bool {
        self.dirichlet_max <= tol.dirichlet
            && self.laplacian_max <= tol.laplacian
            && self.mean_value_max <= tol.mean_value
            && self.neumann_max.map_or(true, |v| v <= tol.neumann)
    }
}

/// Runs the four checks: (a) Dirichlet trace of `phi`, (b) harmonicity of
/// the regular part by the 5-point Laplacian (step `5e-4 * local_scale`),
/// (c) mean value of the regular part on circles of radius
/// `{0.1, 0.2} * local_scale` around `z0`, (d) one-sided normal derivative
/// on Neumann samples (step `1e-4 * local_scale`).
pub fn verify_green<T: Real>(spec: &ConformalMapSpec<'_, T>) -> Result<GreenReport<T>> {
    spec.validate()?;
    let phi = |z: Complex<T>| -> Result<T> { green_value(spec, z) };
    let regular = |z: Complex<T>| -> Result<T> {
        let gamma = newtonian_potential(Point2::new(z.re - spec.z0.re, z.im - spec.z0.im))?;
        Ok(phi(z)? - gamma)
    };

    let mut dirichlet_max = T::zero();
    let mut neumann_max: Option<T> = None;
    let nstep = T::of(1e-4) * spec.local_scale;
    for s in &spec.boundary {
        match s.kind {
            BoundaryKind::Dirichlet => {
                dirichlet_max = dirichlet_max.max(phi(s.point)?.abs());
            }
            BoundaryKind::Neumann => {
                let d = one_sided_derivative2(
                    |t| {
                        phi(s.point + s.inward * Complex::new(t, T::zero()))
                            .unwrap_or(T::nan())
                    },
                    T::zero(),
                    nstep,
                );
                let worst = neumann_max.unwrap_or(T::zero()).max(d.abs());
                neumann_max = Some(worst);
            }
        }
    }

    let lstep = T::of(5e-4) * spec.local_scale;
    let mut laplacian_max = T::zero();
    for &z in &spec.interior {
        let lap = (regular(z + Complex::new(lstep, T::zero()))?
            + regular(z - Complex::new(lstep, T::zero()))?
            + regular(z + Complex::new(T::zero(), lstep))?
            + regular(z - Complex::new(T::zero(), lstep))?
            - T::of(4.0) * regular(z)?)
            / (lstep * lstep);
        laplacian_max = laplacian_max.max(lap.abs());
    }

    // at the pole the regular part equals log|f'(z0)|/(2 pi): with
    // f = g (z - z0) the regular part is Re log(g)/(2 pi) and g(z0) = f'(z0)
    let step = T::of(4e-3) * spec.local_scale;
    let (d1, _) = complex_derivatives(
        &spec.map,
        spec.z0,
        Complex::new(T::one(), T::zero()),
        step,
    );
    let center_value = d1.norm().ln() / (T::of(2.0) * T::PI());

    let mut mean_value_max = T::zero();
    for &factor in &[0.1, 0.2] {
        let r = T::of(factor) * spec.local_scale;
        let m = 64usize;
        let mut mean = T::zero();
        for k in 0..m {
            let angle = T::of(2.0) * T::PI() * T::of_usize(k) / T::of_usize(m);
            mean = mean + regular(spec.z0 + Complex::from_polar(r, angle))?;
        }
        mean = mean / T::of_usize(m);
        mean_value_max = mean_value_max.max((mean - center_value).abs());
    }

    Ok(GreenReport {
        dirichlet_max,
        laplacian_max,
        mean_value_max,
        neumann_max,
    })
}

/// The finite-depth strip map as a registered spec: Dirichlet boundaries on
/// the surface and the bottom, pole at the vortex.
pub fn strip_map_spec<'a, T: Real>(theta: T, h: T) -> ConformalMapSpec<'a, T> {
    let z0 = Complex::new(T::zero(), -(T::one() - theta) * h);
    let scale = T::of(0.8) * theta.min(T::one() - theta) * h;

    let mut boundary = Vec::new();
    for i in 0..40 {
        // log-spaced |x| from 1e-3 h to 20 h, plus x = 0
        let x = if i == 0 {
            T::zero()
        } else {
            T::of(1e-3) * T::of(20.0 / 1e-3).powf(T::of_usize(i - 1) / T::of(38.0)) * h
        };
        for &sign in &[T::one(), -T::one()] {
            boundary.push(BoundarySample {
                point: Complex::new(sign * x, T::zero()),
                kind: BoundaryKind::Dirichlet,
                inward: Complex::new(T::zero(), -T::one()),
            });
            boundary.push(BoundarySample {
                point: Complex::new(sign * x, -h),
                kind: BoundaryKind::Dirichlet,
                inward: Complex::new(T::zero(), T::one()),
            });
        }
    }

    let mut interior = Vec::new();
    for i in 0..8 {
        for j in 1..8 {
            let x = -T::of(2.0) * h + T::of(4.0) * h * T::of_usize(i) / T::of(7.0);
            let y = -h + h * T::of_usize(j) / T::of(8.0);
            let z = Complex::new(x, y);
            if (z - z0).norm() > T::of(0.15) * h {
                interior.push(z);
            }
        }
    }

    ConformalMapSpec {
        name: "finite-depth strip",
        map: Box::new(move |z| strip_to_disk_map(z, theta, h)),
        z0,
        interior,
        boundary,
        local_scale: scale,
    }
}

/// The periodic half-strip map as a registered spec: Dirichlet on the
/// surface, Neumann on the cell walls `x = +-pi L`.
pub fn halfstrip_map_spec<'a, T: Real>(pp: PeriodicParams<T>) -> ConformalMapSpec<'a, T> {
    let l = pp.l();
    let half = T::PI() * l;
    let scale = T::of(0.5) * l.min(half);

    let mut boundary = Vec::new();
    for i in 0..24 {
        let x = -half + T::of(2.0) * half * (T::of_usize(i) + T::of(0.5)) / T::of(24.0);
        boundary.push(BoundarySample {
            point: Complex::new(x, T::one()),
            kind: BoundaryKind::Dirichlet,
            inward: Complex::new(T::zero(), -T::one()),
        });
    }
    for j in 0..16 {
        let y = T::one() - T::of(0.2) - T::of(4.0) * T::of_usize(j) / T::of(15.0);
        boundary.push(BoundarySample {
            point: Complex::new(-half, y),
            kind: BoundaryKind::Neumann,
            inward: Complex::new(T::one(), T::zero()),
        });
        boundary.push(BoundarySample {
            point: Complex::new(half, y),
            kind: BoundaryKind::Neumann,
            inward: Complex::new(-T::one(), T::zero()),
        });
    }

    let mut interior = Vec::new();
    for i in 1..8 {
        for j in 0..8 {
            let x = -half + T::of(2.0) * half * T::of_usize(i) / T::of(8.0);
            let y = T::of(0.7) - T::of(3.0) * T::of_usize(j) / T::of(7.0);
            let z = Complex::new(x, y);
            if z.norm() > T::of(0.15) * l {
                interior.push(z);
            }
        }
    }

    ConformalMapSpec {
        name: "periodic half strip",
        map: Box::new(move |z| halfstrip_to_disk_map(&pp, z)),
        z0: Complex::new(T::zero(), T::zero()),
        interior,
        boundary,
        local_scale: scale,
    }
}

/// The identity map of the unit disk: the Green's function reduces to the
/// Newtonian potential and the regular part vanishes identically.
pub fn identity_disk_spec<'a, T: Real>() -> ConformalMapSpec<'a, T> {
    let mut boundary = Vec::new();
    for k in 0..32 {
        let angle = T::of(2.0) * T::PI() * T::of_usize(k) / T::of(32.0);
        let point = Complex::from_polar(T::one(), angle);
        boundary.push(BoundarySample {
            point,
            kind: BoundaryKind::Dirichlet,
            inward: -point,
        });
    }
    let mut interior = Vec::new();
    for i in 0..6 {
        for j in 0..6 {
            let z = Complex::new(
                -T::of(0.7) + T::of(1.4) * T::of_usize(i) / T::of(5.0),
                -T::of(0.7) + T::of(1.4) * T::of_usize(j) / T::of(5.0),
            );
            if z.norm() > T::of(0.1) && z.norm() < T::of(0.75) {
                interior.push(z);
            }
        }
    }
    ConformalMapSpec {
        name: "identity disk",
        map: Box::new(|z| z),
        z0: Complex::new(T::zero(), T::zero()),
        interior,
        boundary,
        local_scale: T::of(0.5),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::PhysicalParams;

    #[test]
    fn identity_disk_is_the_newtonian_potential() {
        let spec = identity_disk_spec::<f64>();
        spec.validate().unwrap();
        for &(x, y) in &[(0.3, 0.1), (-0.5, 0.4)] {
            let phi = green_value(&spec, Complex::new(x, y)).unwrap();
            let gamma = newtonian_potential(Point2::new(x, y)).unwrap();
            assert!((phi - gamma).abs() < 1e-15);
        }
        let g = regularized_gradient(&spec).unwrap();
        assert!(g.x.abs() < 1e-12 && g.y.abs() < 1e-12);
        let report = verify_green(&spec).unwrap();
        assert!(report.dirichlet_max < 1e-14);
        assert!(report.laplacian_max < 1e-8);
        assert!(report.mean_value_max < 1e-13);
        assert!(report.neumann_max.is_none());
    }

    #[test]
    fn strip_map_green_is_the_stream_function() {
        let theta = 0.3;
        let spec = strip_map_spec::<f64>(theta, 1.0);
        spec.validate().unwrap();
        let params = PhysicalParams::new(1.0, 0.05, 1.0).unwrap();
        for &(x, y) in &[(0.5, -0.2), (-1.2, -0.8), (2.0, -0.5)] {
            let phi = green_value(&spec, Complex::new(x, y)).unwrap();
            let direct =
                crate::stream::stream_function(&params, theta, Point2::new(x, y)).unwrap();
            assert!((phi - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn strip_map_regularized_gradient() {
        for &theta in &[0.25, 0.4, 0.6] {
            let h = 1.0;
            let spec = strip_map_spec::<f64>(theta, h);
            let g = regularized_gradient(&spec).unwrap();
            let expected = (std::f64::consts::PI * theta).cos()
                / (std::f64::consts::PI * theta).sin()
                / (4.0 * h);
            assert!(
                (g.x - expected).abs() < 1e-10,
                "gradient x {} vs {expected} at theta={theta}",
                g.x
            );
            assert!(g.y.abs() < 1e-10);
        }
    }

    #[test]
    fn strip_map_report_within_tolerances() {
        let spec = strip_map_spec::<f64>(0.35, 1.0);
        let report = verify_green(&spec).unwrap();
        let tol = GreenTolerances::default();
        assert!(report.dirichlet_max < tol.dirichlet, "{report:?}");
        assert!(report.laplacian_max < tol.laplacian, "{report:?}");
        assert!(report.mean_value_max < tol.mean_value, "{report:?}");
        assert!(report.passes(&tol));
    }

    #[test]
    fn halfstrip_map_report_with_neumann() {
        let pp = PeriodicParams::new(1.0, 1.0, 0.01).unwrap();
        let spec = halfstrip_map_spec(pp);
        let report = verify_green(&spec).unwrap();
        let tol = GreenTolerances::default();
        assert!(report.dirichlet_max < tol.dirichlet, "{report:?}");
        assert!(report.laplacian_max < tol.laplacian, "{report:?}");
        assert!(report.mean_value_max < tol.mean_value, "{report:?}");
        let neumann = report.neumann_max.expect("cell walls are Neumann");
        assert!(neumann < tol.neumann, "{report:?}");
    }

    #[test]
    fn moebius_factor_matches_hand_derivative() {
        // f(z) = z (a - z)/(a (1 - a z)): f'(0) = 1, f''(0) = 2 (a^2 - 1)/a
        let a = 0.3;
        let spec = ConformalMapSpec::<f64> {
            name: "moebius factor",
            map: Box::new(move |z: Complex<f64>| {
                z * (Complex::new(a, 0.0) - z)
                    / (Complex::new(a, 0.0) * (Complex::new(1.0, 0.0) - Complex::new(a, 0.0) * z))
            }),
            z0: Complex::new(0.0, 0.0),
            interior: vec![],
            boundary: vec![],
            local_scale: 0.5,
        };
        let g = regularized_gradient(&spec).unwrap();
        // the ratio is real, so it lands in the second (x-gradient) slot
        let expected = 2.0 * (a * a - 1.0) / a / (4.0 * std::f64::consts::PI);
        assert!((g.y - expected).abs() < 1e-11, "{} vs {expected}", g.y);
        assert!(g.x.abs() < 1e-11);
    }

    #[test]
    fn rotation_invariance_of_reports() {
        // post-composition with e^{i beta} leaves |f| and f''/f' unchanged
        let theta = 0.4;
        let base = strip_map_spec::<f64>(theta, 1.0);
        let beta = 0.77;
        let rotated = ConformalMapSpec::<f64> {
            name: "rotated strip",
            map: Box::new(move |z| {
                Complex::from_polar(1.0, beta) * strip_to_disk_map(z, theta, 1.0)
            }),
            z0: base.z0,
            interior: base.interior.clone(),
            boundary: base.boundary.clone(),
            local_scale: base.local_scale,
        };
        let g0 = regularized_gradient(&base).unwrap();
        let g1 = regularized_gradient(&rotated).unwrap();
        assert!((g0.x - g1.x).abs() < 1e-10 && (g0.y - g1.y).abs() < 1e-10);
        let r0 = verify_green(&base).unwrap();
        let r1 = verify_green(&rotated).unwrap();
        assert!((r0.dirichlet_max - r1.dirichlet_max).abs() < 1e-10);
        assert!((r0.mean_value_max - r1.mean_value_max).abs() < 1e-10);
    }
}
