//! Natural cubic spline interpolation on a strictly increasing grid.

use crate::scalar::Real;

/// Natural cubic spline through `(xs[i], ys[i])`.
#[derive(Debug, Clone)]
pub struct CubicSpline<T> {
    xs: Vec<T>,
    ys: Vec<T>,
    d2: Vec<T>, // second derivatives at the knots
}

impl<T: Real> CubicSpline<T> {
    /// Builds the spline; `xs` must be strictly increasing with len >= 2.
    pub fn natural(xs: Vec<T>, ys: Vec<T>) -> Self {
        let n = xs.len();
        assert!(n >= 2 && ys.len() == n);
        let mut d2 = vec![T::zero(); n];
        if n > 2 {
            // tridiagonal system for interior second derivatives
            let m = n - 2;
            let mut diag = vec![T::zero(); m];
            let mut upper = vec![T::zero(); m];
            let mut rhs = vec![T::zero(); m];
            for i in 0..m {
                let h0 = xs[i + 1] - xs[i];
                let h1 = xs[i + 2] - xs[i + 1];
                diag[i] = T::of(2.0) * (h0 + h1);
                upper[i] = h1;
                rhs[i] = T::of(6.0)
                    * ((ys[i + 2] - ys[i + 1]) / h1 - (ys[i + 1] - ys[i]) / h0);
            }
            // Thomas algorithm (lower diagonal equals previous upper by symmetry of h)
            for i in 1..m {
                let lower = xs[i + 1] - xs[i];
                let w = lower / diag[i - 1];
                diag[i] = diag[i] - w * upper[i - 1];
                rhs[i] = rhs[i] - w * rhs[i - 1];
            }
            d2[m] = rhs[m - 1] / diag[m - 1];
            for i in (0..m - 1).rev() {
                d2[i + 1] = (rhs[i] - upper[i] * d2[i + 2]) / diag[i];
            }
        }
        CubicSpline { xs, ys, d2 }
    }

    /// Grid extent.
    pub fn x_min(&self) -> T {
        self.xs[0]
    }

    /// Grid extent.
    pub fn x_max(&self) -> T {
        *self.xs.last().unwrap()
    }

    /// Knot positions.
    pub fn knots(&self) -> &[T] {
        &self.xs
    }

    /// Evaluates the spline; clamps to the boundary values outside the grid.
    pub fn eval(&self, x: T) -> T {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        // binary search for the containing interval
        let mut lo = 0usize;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.xs[mid] <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let h = self.xs[hi] - self.xs[lo];
        let a = (self.xs[hi] - x) / h;
        let b = (x - self.xs[lo]) / h;
        a * self.ys[lo]
            + b * self.ys[hi]
            + ((a * a * a - a) * self.d2[lo] + (b * b * b - b) * self.d2[hi]) * h * h
                / T::of(6.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_smooth_function() {
        let n = 201;
        let xs: Vec<f64> = (0..n).map(|i| -3.0 + 6.0 * i as f64 / (n - 1) as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| (-x * x).exp()).collect();
        let s = CubicSpline::natural(xs, ys);
        for i in 0..100 {
            let x = -2.9 + 5.8 * i as f64 / 99.0;
            assert!((s.eval(x) - (-x * x).exp()).abs() < 2e-6);
        }
    }

    #[test]
    fn interpolates_knots_exactly() {
        let xs = vec![0.0, 1.0, 2.5, 4.0];
        let ys = vec![1.0, -2.0, 0.5, 3.0];
        let s = CubicSpline::natural(xs.clone(), ys.clone());
        for (x, y) in xs.iter().zip(&ys) {
            assert!((s.eval(*x) - *y as f64).abs() < 1e-14);
        }
    }
}
