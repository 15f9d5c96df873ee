//! Scalar abstractions: exact integral-domain / field scalars for the
//! incidence and intertwiner algebra, IEEE floats for the spectral solver.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// An exact scalar: an integral domain in which the divisions Bareiss
/// elimination performs are exact (big integers, rationals).
pub trait ExactScalar:
    Clone + Debug + Display + FromStr + PartialEq + Num + Signed + FromPrimitive + Send + Sync
{
}

impl<T> ExactScalar for T where
    T: Clone + Debug + Display + FromStr + PartialEq + Num + Signed + FromPrimitive + Send + Sync
{
}

/// An exact scalar in which every nonzero element is invertible.
pub trait ExactField: ExactScalar {}

impl<T> ExactField for Ratio<T>
where
    T: Clone + Integer + Signed,
    Ratio<T>: ExactScalar,
{
}

/// Floating-point scalar for the numerical eigensolver (`f32` or `f64`).
pub trait Real: Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static {
    /// Relative residual tolerance the eigensolver aims for.
    fn residual_tolerance() -> Self {
        let floor = Self::epsilon() * Self::from_f64(100.0).unwrap();
        floor.max(Self::from_f64(1e-8).unwrap())
    }

    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap()
    }
}

impl Real for f32 {}
impl Real for f64 {}
