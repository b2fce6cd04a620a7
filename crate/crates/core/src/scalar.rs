//! Scalar abstractions.
//!
//! Floating-point numerics (transforms, norms, kernels, the Picard solver) are
//! written against [`Real`], implemented for `f32` and `f64`. Exponent
//! arithmetic (admissibility, scaling) is written against [`Exact`], which is
//! also implemented by `num_rational::Ratio<i64>` so lattice enumerations can
//! classify boundary points without rounding.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, Signed, ToPrimitive};
use rustfft::FftNum;

/// Floating-point scalar usable by the spectral machinery.
pub trait Real:
    Float + FloatConst + FftNum + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Scalar for exponent bookkeeping: any ordered field with conversions from
/// small integers. Floats and `Ratio<i64>` both qualify.
pub trait Exact: Copy + Debug + Signed + PartialOrd + FromPrimitive + ToPrimitive {
    #[inline]
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("small integer representable")
    }

    #[inline]
    fn half() -> Self {
        Self::one() / Self::int(2)
    }

    /// Closest `f64`, used only for reporting.
    #[inline]
    fn approx(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Tolerance used when deciding equality; zero for exact types.
    fn equality_slack() -> Self;
}

impl Exact for f64 {
    fn equality_slack() -> Self {
        1e-12
    }
}

impl Exact for f32 {
    fn equality_slack() -> Self {
        1e-6
    }
}

impl Exact for Ratio<i64> {
    fn equality_slack() -> Self {
        Ratio::from_integer(0)
    }
}
