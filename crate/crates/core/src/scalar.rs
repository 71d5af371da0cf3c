//! Scalar abstraction for amplitudes.
//!
//! All state math is written against [`Scalar`], so the same code runs on
//! `f32`, `f64`, or any other float with primitive conversions. The crate
//! root exports `f64` aliases for the common case; the documented tolerances
//! (1e-12 norms, 1e-10 rank thresholds) assume `f64` precision.

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar usable as a state amplitude.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Conversion from an `f64` constant (tolerances, literals).
    #[inline]
    fn from_f64_const(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant")
    }

    /// Lossy conversion to `f64` for reporting and serialization.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("real scalar converts to f64")
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Neumaier-compensated sum. Keeps norm and mean computations accurate to a
/// few ulps even for 2^20-entry registers, which plain summation would not.
pub fn compensated_sum<T: Scalar, I: IntoIterator<Item = T>>(values: I) -> T {
    let mut sum = T::zero();
    let mut compensation = T::zero();
    for v in values {
        let t = sum + v;
        compensation = if sum.abs() >= v.abs() {
            compensation + ((sum - t) + v)
        } else {
            compensation + ((v - t) + sum)
        };
        sum = t;
    }
    sum + compensation
}
