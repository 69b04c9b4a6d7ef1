//! Scalar abstraction shared by every measure, kernel and estimator.
//!
//! All measure values and index computations are generic over [`Scalar`], which is
//! implemented for `f32`, `f64` and the exact rational type [`crate::Rational`].
//! Floating-point scalars additionally provide an error-free summation routine so
//! that long sums of kernel values are correctly rounded.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, NumAssign, Signed};

/// Numeric type usable as a measure value.
pub trait Scalar:
    Copy + Num + NumAssign + Signed + PartialOrd + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion used for statistics and reporting.
    fn to_f64(self) -> f64;

    /// The value `num / den`, computed in the scalar's own arithmetic.
    fn ratio(num: i64, den: i64) -> Self;

    /// Adds `x` into a list of non-overlapping partial sums without rounding error.
    fn grow_partials(partials: &mut Vec<Self>, x: Self);

    /// Rounds a list of partial sums produced by [`Scalar::grow_partials`] to one value.
    fn collapse_partials(partials: &[Self]) -> Self;

    fn from_count(k: usize) -> Self {
        Self::from_usize(k).expect("count representable in scalar type")
    }

    fn exact_sum<I: IntoIterator<Item = Self>>(values: I) -> Self {
        let mut acc = ExactSum::new();
        for v in values {
            acc.add(v);
        }
        acc.value()
    }
}

/// Order-independent accumulator: the result is the correctly rounded value of the
/// exact sum of everything added.
#[derive(Clone, Debug, Default)]
pub struct ExactSum<T> {
    partials: Vec<T>,
}

impl<T: Scalar> ExactSum<T> {
    pub fn new() -> Self {
        Self { partials: Vec::new() }
    }

    pub fn add(&mut self, x: T) {
        T::grow_partials(&mut self.partials, x);
    }

    pub fn value(&self) -> T {
        T::collapse_partials(&self.partials)
    }
}

impl<T: Scalar> Extend<T> for ExactSum<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

// Shewchuk's partials; the collapse step rounds half-way cases correctly.
macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn to_f64(self) -> f64 {
                self as f64
            }

            fn ratio(num: i64, den: i64) -> Self {
                (num as $t) / (den as $t)
            }

            fn grow_partials(partials: &mut Vec<Self>, x: Self) {
                let mut x = x;
                let mut kept = 0;
                for idx in 0..partials.len() {
                    let mut y = partials[idx];
                    if x.abs() < y.abs() {
                        std::mem::swap(&mut x, &mut y);
                    }
                    let hi = x + y;
                    let lo = y - (hi - x);
                    if lo != 0.0 {
                        partials[kept] = lo;
                        kept += 1;
                    }
                    x = hi;
                }
                partials.truncate(kept);
                partials.push(x);
            }

            fn collapse_partials(partials: &[Self]) -> Self {
                let mut n = partials.len();
                if n == 0 {
                    return 0.0;
                }
                n -= 1;
                let mut hi = partials[n];
                let mut lo: $t = 0.0;
                while n > 0 {
                    let x = hi;
                    n -= 1;
                    let y = partials[n];
                    hi = x + y;
                    lo = y - (hi - x);
                    if lo != 0.0 {
                        break;
                    }
                }
                if n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0)) {
                    let y = lo * 2.0;
                    let x = hi + y;
                    if y == x - hi {
                        hi = x;
                    }
                }
                hi
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for Ratio<i128> {
    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        Ratio::new(num as i128, den as i128)
    }

    fn grow_partials(partials: &mut Vec<Self>, x: Self) {
        match partials.first_mut() {
            Some(total) => *total += x,
            None => partials.push(x),
        }
    }

    fn collapse_partials(partials: &[Self]) -> Self {
        partials.first().copied().unwrap_or_else(|| Ratio::from_integer(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    #[test]
    fn exact_sum_cancels_to_zero() {
        let xs = [0.1, 0.25, -0.1, 1e16, 1.0, -1e16, -1.0, -0.25];
        assert_eq!(f64::exact_sum(xs), 0.0);
    }

    #[test]
    fn exact_sum_recovers_small_terms() {
        let xs = [1e100, 1.0, -1e100, 1e-100];
        assert_eq!(f64::exact_sum(xs), 1.0 + 1e-100);
        assert_eq!(f64::exact_sum([0.1f64; 10]), 1.0);
    }

    #[test]
    fn rational_sum_is_plain_sum() {
        let xs = [Rational::ratio(1, 3), Rational::ratio(1, 6), Rational::ratio(-1, 2)];
        assert_eq!(Rational::exact_sum(xs), Rational::ratio(0, 1));
        assert_eq!(Rational::ratio(3, 4).to_f64(), 0.75);
    }

    proptest! {
        #[test]
        fn exact_sum_is_permutation_invariant(mut xs in prop::collection::vec(-1e6f64..1e6, 0..40), seed in any::<u64>()) {
            let forward = f64::exact_sum(xs.iter().copied());
            // deterministic reshuffle
            let len = xs.len();
            let mut state = seed;
            for i in (1..len).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                xs.swap(i, (state >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(forward, f64::exact_sum(xs));
        }
    }
}
