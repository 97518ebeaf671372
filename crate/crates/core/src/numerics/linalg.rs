//! Dense LU factorization with partial pivoting for the small systems
//! (n <= 16) appearing in the vortex-interaction computations.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// LU factorization of a square matrix, stored packed with its pivots.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    n: usize,
    lu: Vec<T>, // row-major, L below diagonal (unit), U on and above
    piv: Vec<usize>,
    sign: i8,
}

impl<T: Real> Lu<T> {
    /// Factors `a` (row-major rows) in place of a copy.
    pub fn factor(a: &[Vec<T>]) -> Self {
        let n = a.len();
        debug_assert!(a.iter().all(|row| row.len() == n));
        let mut lu: Vec<T> = a.iter().flat_map(|row| row.iter().copied()).collect();
        let mut piv: Vec<usize> = (0..n).collect();
        let mut sign = 1i8;

        for col in 0..n {
            // partial pivot
            let mut p = col;
            let mut max = lu[col * n + col].abs();
            for row in (col + 1)..n {
                let v = lu[row * n + col].abs();
                if v > max {
                    max = v;
                    p = row;
                }
            }
            if p != col {
                for k in 0..n {
                    lu.swap(col * n + k, p * n + k);
                }
                piv.swap(col, p);
                sign = -sign;
            }
            let pivot = lu[col * n + col];
            if pivot == T::zero() {
                continue; // singular; det() will report zero
            }
            for row in (col + 1)..n {
                let factor = lu[row * n + col] / pivot;
                lu[row * n + col] = factor;
                for k in (col + 1)..n {
                    let sub = factor * lu[col * n + k];
                    lu[row * n + k] = lu[row * n + k] - sub;
                }
            }
        }
        Lu { n, lu, piv, sign }
    }

    /// Determinant from the U diagonal and the pivot sign.
    pub fn det(&self) -> T {
        let mut d = if self.sign > 0 { T::one() } else { -T::one() };
        for i in 0..self.n {
            d = d * self.lu[i * self.n + i];
        }
        d
    }

    /// Solves `A x = b`. Fails if a pivot vanished during factorization.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.n;
        debug_assert_eq!(b.len(), n);
        for i in 0..n {
            if self.lu[i * n + i] == T::zero() {
                return Err(Error::SingularMatrix {
                    det: 0.0,
                    tol: 0.0,
                });
            }
        }
        let mut x: Vec<T> = self.piv.iter().map(|&p| b[p]).collect();
        // forward: L y = P b
        for i in 1..n {
            let mut acc = x[i];
            for k in 0..i {
                acc = acc - self.lu[i * n + k] * x[k];
            }
            x[i] = acc;
        }
        // backward: U x = y
        for i in (0..n).rev() {
            let mut acc = x[i];
            for k in (i + 1)..n {
                acc = acc - self.lu[i * n + k] * x[k];
            }
            x[i] = acc / self.lu[i * n + i];
        }
        Ok(x)
    }
}

/// Maximum row sum (infinity norm) of a row-major matrix.
pub fn infinity_norm<T: Real>(a: &[Vec<T>]) -> T {
    a.iter()
        .map(|row| row.iter().fold(T::zero(), |s, v| s + v.abs()))
        .fold(T::zero(), |m, v| m.max(v))
}

/// Infinity norm of the residual `A x - b`.
pub fn residual_norm<T: Real>(a: &[Vec<T>], x: &[T], b: &[T]) -> T {
    let mut worst = T::zero();
    for (row, &bi) in a.iter().zip(b) {
        let ax = row
            .iter()
            .zip(x)
            .fold(T::zero(), |s, (&aij, &xj)| s + aij * xj);
        worst = worst.max((ax - bi).abs());
    }
    worst
}
