//! Scalar abstraction shared by the statistical parts of the crate.
//!
//! Probabilities, frequencies, recencies and fitness values are generic over
//! [`Real`], so the same code runs in `f32` (half the accumulator memory on
//! large ensembles) or `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use rand::distributions::uniform::SampleUniform;

/// Floating point scalar usable throughout the crate.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + SampleUniform + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from a count.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as float")
    }

    /// Lossy conversion from `f64` (constants, configuration values).
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
