//! Exact arithmetic: arbitrary-precision scalars, binomial coefficients
//! with the zero convention, dense integer polynomials, and power-series
//! expansion of rational functions.
//!
//! Everything here is exact; no floating point anywhere. The scalar types
//! are backed by [`num_bigint`] / [`num_rational`]:
//! - [`ExactInt`]: signed integer of unbounded magnitude
//! - [`ExactRat`]: rational number, always reduced, denominator positive

mod poly;
mod series;

pub use poly::Polynomial;
pub use series::RationalFunction;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Arbitrary-precision rational. `num_rational` keeps these reduced with a
/// positive denominator, which is exactly the invariant we need.
pub type ExactRat = BigRational;

/// Errors from the power-series machinery.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactMathError {
    /// The denominator's constant term is zero, so no Maclaurin expansion
    /// exists at z = 0.
    #[error("no power-series expansion at z = 0: denominator constant term is zero")]
    NonExpandable,
    /// An integer coefficient prefix was requested but the series has a
    /// non-integral coefficient.
    #[error("series coefficient a_{index} = {value} is not an integer")]
    NonIntegralCoefficient { index: usize, value: ExactRat },
}

/// Binomial coefficient C(n, k) with the zero convention: the result is 0
/// whenever k < 0, n < 0 or k > n.
///
/// The zero convention is load-bearing: the alternating-sum identities in
/// this crate evaluate binomials at negative and out-of-range lower indices
/// and rely on those terms vanishing.
///
/// Computed by the multiplicative formula with running exact division, so a
/// single coefficient at n in the thousands stays cheap (no factorials).
pub fn binomial(n: i64, k: i64) -> ExactInt {
    if k < 0 || n < 0 || k > n {
        return ExactInt::zero();
    }
    // C(n, k) = C(n, n - k): take the shorter product.
    let k = k.min(n - k);
    // After step i the accumulator holds C(n - k + i, i), an integer, so
    // every division is exact.
    let mut acc = ExactInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), ExactInt::from(6));
        assert_eq!(binomial(0, 0), ExactInt::from(1));
        assert_eq!(binomial(10, 5), ExactInt::from(252));
        assert_eq!(binomial(1000, 2), ExactInt::from(499_500));
    }

    #[test]
    fn binomial_zero_convention() {
        assert_eq!(binomial(3, 5), ExactInt::zero());
        assert_eq!(binomial(1, -1), ExactInt::zero());
        assert_eq!(binomial(-2, 0), ExactInt::zero());
        assert_eq!(binomial(-2, -3), ExactInt::zero());
    }

    #[test]
    fn binomial_pascal_recurrence_up_to_200() {
        // C(n,k) = C(n-1,k-1) + C(n-1,k) for 0 <= k <= n <= 200, checked
        // against an additively built Pascal row.
        let mut row: Vec<ExactInt> = vec![ExactInt::one()];
        for n in 1..=200i64 {
            let mut next = Vec::with_capacity(n as usize + 1);
            next.push(ExactInt::one());
            for k in 1..n {
                next.push(&row[k as usize - 1] + &row[k as usize]);
            }
            next.push(ExactInt::one());
            row = next;
            for (k, expected) in row.iter().enumerate() {
                assert_eq!(&binomial(n, k as i64), expected, "C({n},{k})");
            }
        }
    }

    #[test]
    fn binomial_symmetric() {
        for n in 0..40i64 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n, n - k));
            }
        }
    }
}
