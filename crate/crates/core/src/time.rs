//! Scalar abstraction for timestamps.
//!
//! Everything that manipulates timestamps arithmetically (finite words,
//! window counting, interval sets for the dense evaluator) is written against
//! [`TimeValue`]. Floating point types are deliberately not implementors:
//! open-interval membership must be exact.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact, totally ordered, signed number usable as a timestamp.
pub trait TimeValue:
    Clone + Ord + Debug + Display + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Lossless conversion from an integer interval endpoint.
    fn from_endpoint(c: u64) -> Self {
        Self::from_u64(c).expect("interval endpoint does not fit the time type")
    }
}

impl TimeValue for i64 {}
impl TimeValue for i128 {}

impl<I> TimeValue for Ratio<I>
where
    I: Clone + Integer + Signed + Debug + Display + FromPrimitive + Send + Sync + 'static,
    Ratio<I>: FromPrimitive,
{
}
