//! Numeric traits shared by the generic parts of the crate.

use std::fmt::Debug;

use num_traits::{Float, FloatConst, PrimInt};

/// Coordinate type for chart geometry.
pub trait Coordinate: Float + FloatConst + Debug {}

impl<T> Coordinate for T where T: Float + FloatConst + Debug {}

/// Exact binomial coefficient `C(n, k)`, or `None` if it overflows `T`.
///
/// Uses the multiplicative form `C(n, i+1) = C(n, i) * (n - i) / (i + 1)`,
/// which stays integral at every step.
pub fn binomial<T: PrimInt>(n: u32, k: u32) -> Option<T> {
    if k > n {
        return Some(T::zero());
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        let num = T::from(n - i)?;
        let den = T::from(i + 1)?;
        acc = acc.checked_mul(&num)? / den;
    }
    Some(acc)
}
