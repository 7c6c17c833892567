//! Scalar abstraction for the numeric kernel.
//!
//! Distributions, summary statistics, and PCA are generic over [`Float`] so
//! they run at `f32` or `f64`; the pipeline code instantiates everything at
//! `f64` (see the aliases at the crate root).

use std::fmt;
use std::iter::Sum;

/// Floating-point scalar usable by the statistics and PCA kernels.
pub trait Float:
    num_traits::Float + num_traits::FromPrimitive + Sum + fmt::Debug + fmt::Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from `f64`; panics only for values a float cannot
    /// represent at all (never the case for finite inputs).
    fn cast(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 converts to any float type")
    }

    /// Conversion from a count.
    fn cast_usize(n: usize) -> Self {
        Self::from_usize(n).unwrap_or_else(|| Self::cast(n as f64))
    }

    fn as_f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).expect("float converts to f64")
    }
}

impl Float for f32 {}
impl Float for f64 {}
