//! Finite-difference stencils: real first/second derivatives, the 5-point
//! Laplacian, and Richardson-refined complex derivatives of analytic maps.

use num_complex::Complex;

use crate::scalar::Real;

/// 4th-order central first derivative.
pub fn derivative4<T: Real, F: Fn(T) -> T>(f: F, x: T, step: T) -> T {
    let two = T::of(2.0);
    (-f(x + two * step) + T::of(8.0) * f(x + step) - T::of(8.0) * f(x - step)
        + f(x - two * step))
        / (T::of(12.0) * step)
}

/// 4th-order central second derivative (5-point).
pub fn second_derivative5<T: Real, F: Fn(T) -> T>(f: F, x: T, step: T) -> T {
    let two = T::of(2.0);
    (-f(x + two * step) + T::of(16.0) * f(x + step) - T::of(30.0) * f(x)
        + T::of(16.0) * f(x - step)
        - f(x - two * step))
        / (T::of(12.0) * step * step)
}

/// 2nd-order central second derivative (3-point).
pub fn second_derivative3<T: Real, F: Fn(T) -> T>(f: F, x: T, step: T) -> T {
    (f(x + step) - T::of(2.0) * f(x) + f(x - step)) / (step * step)
}

/// 5-point finite-difference Laplacian of a scalar field.
pub fn laplacian5<T: Real, F: Fn(T, T) -> T>(f: F, x: T, y: T, step: T) -> T {
    (f(x + step, y) + f(x - step, y) + f(x, y + step) + f(x, y - step)
        - T::of(4.0) * f(x, y))
        / (step * step)
}

/// 2nd-order one-sided directional derivative into the domain.
pub fn one_sided_derivative2<T: Real, F: Fn(T) -> T>(f: F, t0: T, step: T) -> T {
    (-T::of(3.0) * f(t0) + T::of(4.0) * f(t0 + step) - f(t0 + T::of(2.0) * step))
        / (T::of(2.0) * step)
}

fn cderiv1<T: Real, F: Fn(Complex<T>) -> Complex<T>>(
    f: &F,
    z0: Complex<T>,
    dir: Complex<T>,
    step: T,
) -> Complex<T> {
    let h = dir * Complex::new(step, T::zero());
    let two = Complex::new(T::of(2.0), T::zero());
    let eight = Complex::new(T::of(8.0), T::zero());
    let num = -f(z0 + h * two) + eight * f(z0 + h) - eight * f(z0 - h) + f(z0 - h * two);
    num / (h * Complex::new(T::of(12.0), T::zero()))
}

fn cderiv2<T: Real, F: Fn(Complex<T>) -> Complex<T>>(
    f: &F,
    z0: Complex<T>,
    dir: Complex<T>,
    step: T,
) -> Complex<T> {
    let h = dir * Complex::new(step, T::zero());
    let two = Complex::new(T::of(2.0), T::zero());
    let num = -f(z0 + h * two) + Complex::new(T::of(16.0), T::zero()) * f(z0 + h)
        - Complex::new(T::of(30.0), T::zero()) * f(z0)
        + Complex::new(T::of(16.0), T::zero()) * f(z0 - h)
        - f(z0 - h * two);
    num / (h * h * Complex::new(T::of(12.0), T::zero()))
}

/// First and second complex derivatives of an analytic map at `z0`.
///
/// 4th-order central stencils along `dir` at `step` and `step/2`, combined
/// by one Richardson step to 6th order; this keeps the roundoff floor of
/// the second-derivative stencil below 1e-10 at the default step.
pub fn complex_derivatives<T: Real, F: Fn(Complex<T>) -> Complex<T>>(
    f: F,
    z0: Complex<T>,
    dir: Complex<T>,
    step: T,
) -> (Complex<T>, Complex<T>) {
    let sixteen = Complex::new(T::of(16.0), T::zero());
    let fifteen = Complex::new(T::of(15.0), T::zero());
    let half = T::of(0.5);

    let d1_h = cderiv1(&f, z0, dir, step);
    let d1_h2 = cderiv1(&f, z0, dir, step * half);
    let d2_h = cderiv2(&f, z0, dir, step);
    let d2_h2 = cderiv2(&f, z0, dir, step * half);

    let d1 = (sixteen * d1_h2 - d1_h) / fifteen;
    let d2 = (sixteen * d2_h2 - d2_h) / fifteen;
    (d1, d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_stencils_on_exp() {
        let d1 = derivative4(|x: f64| x.exp(), 0.3, 1e-2);
        assert!((d1 - 0.3_f64.exp()).abs() < 1e-9);
        let d2 = second_derivative5(|x: f64| x.exp(), 0.3, 1e-2);
        assert!((d2 - 0.3_f64.exp()).abs() < 1e-7);
    }

    #[test]
    fn laplacian_of_harmonic_is_small() {
        // x^2 - y^2 is harmonic and the 5-point stencil is exact for quadratics
        let l = laplacian5(|x: f64, y: f64| x * x - y * y, 0.4, -0.2, 1e-3);
        assert!(l.abs() < 1e-9);
    }

    #[test]
    fn complex_derivatives_of_exp() {
        let z0 = Complex::new(0.2, -0.1);
        let (d1, d2) = complex_derivatives(|z: Complex<f64>| z.exp(), z0, Complex::new(1.0, 0.0), 4e-3);
        let exact = z0.exp();
        assert!((d1 - exact).norm() < 1e-12);
        assert!((d2 - exact).norm() < 1e-9);
    }
}
