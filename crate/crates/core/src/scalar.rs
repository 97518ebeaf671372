//! Scalar abstraction for the whole crate.
//!
//! All numerical routines are generic over [`Real`], which is implemented
//! for `f32` and `f64`. The default tolerances quoted throughout the crate
//! assume `f64`; callers instantiating at `f32` should supply their own.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + 'static {
    /// Converts an `f64` constant into `Self`.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 constant")
    }

    /// Converts a `usize` (grid sizes, series indices) into `Self`.
    #[inline]
    fn of_usize(v: usize) -> Self {
        Self::from_usize(v).expect("representable usize")
    }

    /// Lossy view as `f64`, used for error diagnostics.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
