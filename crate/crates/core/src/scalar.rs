//! Floating-point scalar abstraction and numeric tolerances.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Numeric tolerances used by every predicate in the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance<T> {
    /// Absolute bound on a normalized cross product below which two lines count as parallel.
    pub parallel: T,
    /// Distance tolerance relative to the polygon diameter.
    pub abs_rel: T,
    /// Relative tolerance for area comparisons.
    pub rel: T,
    /// Minimum admissible turn angle, in radians.
    pub turn: T,
}

/// Scalar types the geometry is generic over.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Default tolerances for this precision.
    fn tolerance() -> Tolerance<Self>;

    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("literal is representable")
    }

    /// Converts a count or index.
    fn from_usize_lossy(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("count is representable")
    }

    /// Lossless-enough view as `f64` for reporting.
    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn tolerance() -> Tolerance<f64> {
        Tolerance {
            parallel: 1e-12,
            abs_rel: 1e-9,
            rel: 1e-9,
            turn: 1e-9,
        }
    }
}

impl Scalar for f32 {
    fn tolerance() -> Tolerance<f32> {
        Tolerance {
            parallel: 1e-6,
            abs_rel: 1e-4,
            rel: 1e-4,
            turn: 1e-4,
        }
    }
}

/// `x < y` by more than the relative tolerance.
pub fn definitely_less<T: Scalar>(x: T, y: T, rel: T) -> bool {
    x < y - rel * y.abs()
}
