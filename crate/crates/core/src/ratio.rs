//! Exact rationals for overlap degrees, precisions and accuracies.
//!
//! Every threshold comparison in the crate goes through [`ExactRatio`]; no
//! floating point value is ever compared against a precision.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An arbitrary-precision rational kept in lowest terms with a positive
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

/// Shorthand for `ExactRatio::new` over machine integers.
pub fn ratio(num: i64, den: i64) -> Result<ExactRatio> {
    ExactRatio::new(num, den)
}

impl ExactRatio {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(ExactRatio(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRatio(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRatio(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRatio(BigRational::one())
    }

    pub fn half() -> Self {
        ExactRatio(BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// `count / total` for cardinalities; `total` must be non-zero.
    pub(crate) fn of_counts(count: usize, total: usize) -> Self {
        debug_assert!(total > 0);
        ExactRatio(BigRational::new(BigInt::from(count), BigInt::from(total)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// `1 - self`.
    pub fn complement(&self) -> Self {
        ExactRatio(BigRational::one() - &self.0)
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        ExactRatio((&self.0 + &other.0) / BigInt::from(2))
    }

    /// Parses `p/q`, an integer, or a decimal literal such as `0.25`.
    /// Decimals convert exactly: `0.33` is `33/100`, not `1/3`.
    pub fn parse_literal(text: &str) -> Result<Self> {
        let s = text.trim();
        let invalid = || Error::InvalidRatio(text.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| invalid())?;
            let d: BigInt = d.trim().parse().map_err(|_| invalid())?;
            return ExactRatio::new(n, d);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let (negative, int_digits) = match int_part.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
            };
            let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
            if !all_digits(int_digits)
                || !all_digits(frac_part)
                || (int_digits.is_empty() && frac_part.is_empty())
            {
                return Err(invalid());
            }
            let digits = format!("{int_digits}{frac_part}");
            let mut num: BigInt = if digits.is_empty() {
                BigInt::zero()
            } else {
                digits.parse().map_err(|_| invalid())?
            };
            if negative {
                num = -num;
            }
            let den = num_traits::pow(BigInt::from(10), frac_part.len());
            return ExactRatio::new(num, den);
        }
        let n: BigInt = s.parse().map_err(|_| invalid())?;
        Ok(ExactRatio::from_integer(n))
    }
}

impl FromStr for ExactRatio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExactRatio::parse_literal(s)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for ExactRatio {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactRatio> for &ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &ExactRatio) -> ExactRatio {
                ExactRatio($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&ExactRatio> for &ExactRatio {
    type Output = ExactRatio;

    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: &ExactRatio) -> ExactRatio {
        assert!(!rhs.is_zero(), "division of ExactRatio by zero");
        ExactRatio(&self.0 / &rhs.0)
    }
}
