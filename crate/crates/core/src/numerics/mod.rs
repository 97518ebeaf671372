//! Shared numerical machinery: quadrature, small dense linear algebra,
//! root finding, finite differences, splines, and stable trig helpers.

pub mod diff;
pub mod linalg;
pub mod quad;
pub mod roots;
pub mod spline;
pub mod trig;

use crate::scalar::Real;

/// Kahan-compensated running sum.
#[derive(Debug, Clone, Copy)]
pub struct KahanSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> KahanSum<T> {
    pub fn new() -> Self {
        KahanSum {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    pub fn add(&mut self, term: T) {
        let y = term - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum
    }
}

impl<T: Real> Default for KahanSum<T> {
    fn default() -> Self {
        Self::new()
    }
}
