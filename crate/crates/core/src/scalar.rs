//! Scalar abstractions shared by every numeric module.
//!
//! Two tiers are used. [`Field`] is the minimal ordered-field interface the
//! structure-constant code needs, and it is satisfied by `f32`, `f64` and exact
//! rationals. [`Real`] adds the transcendental functions required by spectra,
//! eigensolvers and Clifford matrices, and is only implemented for floats.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive};

/// Ordered field with an absolute value.
pub trait Field:
    Num + std::ops::Neg<Output = Self> + Clone + PartialOrd + Debug + Send + Sync + 'static
{
    /// Relative rounding unit; zero for exact arithmetic.
    fn rounding_unit() -> Self;

    fn from_int(v: i64) -> Self;

    fn magnitude(&self) -> Self;

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }
}

impl Field for f64 {
    fn rounding_unit() -> Self {
        f64::EPSILON
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn magnitude(&self) -> Self {
        f64::abs(*self)
    }
}

impl Field for f32 {
    fn rounding_unit() -> Self {
        f32::EPSILON
    }

    fn from_int(v: i64) -> Self {
        v as f32
    }

    fn magnitude(&self) -> Self {
        f32::abs(*self)
    }
}

impl<I> Field for Ratio<I>
where
    I: num_integer::Integer + Signed + Clone + Debug + Send + Sync + FromPrimitive + 'static,
{
    fn rounding_unit() -> Self {
        Ratio::from_integer(I::zero())
    }

    fn from_int(v: i64) -> Self {
        Ratio::from_integer(I::from_i64(v).expect("integer out of range for rational type"))
    }

    fn magnitude(&self) -> Self {
        Signed::abs(self)
    }
}

/// Floating-point scalar used by all spectral and matrix code.
pub trait Real:
    Field
    + Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Copy
    + Default
    + Display
    + LowerExp
    + Sum
{
    /// Converts an `f64` constant, panicking only for values the type cannot hold.
    fn c(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("constant not representable")
    }

    fn from_count(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).expect("integer not representable")
    }

    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f64 {}
impl Real for f32 {}

/// Converts an exact rational index into the working scalar.
pub fn ratio_to_real<T: Real>(q: &num_rational::Rational64) -> T {
    T::c(*q.numer() as f64) / T::c(*q.denom() as f64)
}
