use std::fmt;
use std::ops::Add;

use num_traits::{One, Signed, Zero};

use super::{ExactInt, ExactMathError, ExactRat, Polynomial};

/// Quotient of two integer polynomials, used as a generating function.
///
/// Construction requires the denominator to have a nonzero constant term,
/// which is exactly the condition for a Maclaurin expansion at z = 0 to
/// exist. The quotient is kept unreduced; only its expansion matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ExactMathError> {
        if den.constant_term().is_zero() {
            return Err(ExactMathError::NonExpandable);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    /// First `count` Maclaurin coefficients, as exact integers.
    ///
    /// When the denominator's constant term is a unit the recurrence runs
    /// entirely over integers. Otherwise coefficients are computed over the
    /// rationals and each one is checked to be integral; a fractional
    /// coefficient is reported as an error rather than rounded.
    pub fn series_prefix(&self, count: usize) -> Result<Vec<ExactInt>, ExactMathError> {
        let d0 = self.den.constant_term();
        if d0.is_one() || (-&d0).is_one() {
            let negate = d0.is_negative();
            let deg = self.den.degree().unwrap_or(0);
            let mut out: Vec<ExactInt> = Vec::with_capacity(count);
            for k in 0..count {
                let mut acc = self.num.coeff(k);
                for j in 1..=k.min(deg) {
                    acc -= self.den.coeff(j) * &out[k - j];
                }
                out.push(if negate { -acc } else { acc });
            }
            return Ok(out);
        }
        self.series_prefix_rational(count)
            .into_iter()
            .enumerate()
            .map(|(index, value)| {
                if value.is_integer() {
                    Ok(value.to_integer())
                } else {
                    Err(ExactMathError::NonIntegralCoefficient { index, value })
                }
            })
            .collect()
    }

    /// First `count` Maclaurin coefficients over the rationals.
    pub fn series_prefix_rational(&self, count: usize) -> Vec<ExactRat> {
        // a_k solves sum_{j} den_j * a_{k-j} = num_k.
        let d0 = ExactRat::from_integer(self.den.constant_term());
        let deg = self.den.degree().unwrap_or(0);
        let mut out: Vec<ExactRat> = Vec::with_capacity(count);
        for k in 0..count {
            let mut acc = ExactRat::from_integer(self.num.coeff(k));
            for j in 1..=k.min(deg) {
                acc -= ExactRat::from_integer(self.den.coeff(j)) * &out[k - j];
            }
            out.push(acc / &d0);
        }
        out
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    /// a/b + c/d = (a*d + c*b) / (b*d). Both constant terms of b and d are
    /// nonzero, so the sum's denominator is again expandable.
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalFunction { num, den }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
