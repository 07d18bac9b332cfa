//! Scalar abstraction shared by operators, states and evaluators.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar used for every numeric (non-exact) computation.
///
/// Implemented for `f32` and `f64`. Exact quantities (spin values, angles,
/// fixed-sign sums) never go through this trait.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts a tolerance stated for double precision into one that is
    /// meaningful for `Self`, scaling by the ratio of machine epsilons.
    ///
    /// For `f64` this is the identity.
    fn scaled_tol(tol_f64: f64) -> Self {
        let ratio = Self::epsilon().to_f64().unwrap_or(f64::EPSILON) / f64::EPSILON;
        Self::from_f64(tol_f64 * ratio.max(1.0)).unwrap_or_else(Self::epsilon)
    }

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in every Real")
    }
}

impl Real for f32 {}
impl Real for f64 {}
