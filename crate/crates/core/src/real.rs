//! Scalar abstraction for the whole engine.
//!
//! Every model in this crate is generic over [`Real`], so the same code runs
//! in `f64` for reference work and in `f32` where memory or embedded targets
//! demand it. The crate root exports `f64` aliases for the common types.

use core::fmt::{Debug, Display};
use core::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + 'static
{
    /// Embeds an `f64` constant into the scalar type.
    #[inline]
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("constant not representable in scalar type")
    }

    /// Widens to `f64` for reporting and diagnostics.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar not convertible to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
