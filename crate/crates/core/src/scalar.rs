use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Numeric type used for PMU costs and fitness values.
///
/// Anything that behaves like an ordered field element qualifies: `f32`,
/// `f64` and `Rational64` all do. The optimiser only needs `to_f64` for the
/// annealing acceptance probability; every sum and comparison stays in `T`.
pub trait Scalar:
    Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Parses a decimal or native literal (`"1.5"`, `"3/2"` for rationals).
    fn parse_literal(text: &str) -> Option<Self> {
        if let Ok(v) = Self::from_str_radix(text, 10) {
            return v.to_f64().filter(|f| f.is_finite()).map(|_| v);
        }
        text.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .and_then(Self::from_f64)
    }
}

impl<T> Scalar for T where
    T: Num
        + Copy
        + PartialOrd
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}
