use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, SubAssign};

use num_traits::{Float, FromPrimitive, NumCast};

/// Floating point type used for edge weights, centralities and modularity:
/// `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + NumCast + Sum + AddAssign + SubAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts a count to the scalar type.
    fn from_count(n: usize) -> Self {
        <Self as NumCast>::from(n).expect("count representable as float")
    }

    fn from_f64_lossy(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("finite f64 representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
